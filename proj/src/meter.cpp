#include "relmatch/meter.hpp"

#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "relmatch/engines.hpp"
#include "relmatch/gallery.hpp"
#include "relmatch/nonlocal.hpp"
#include "relmatch/protocols.hpp"

namespace relmatch {

namespace {

std::vector<std::int64_t> random_codes(std::uint64_t m, std::mt19937_64& rng,
                                       std::int64_t alphabet) {
    std::vector<std::int64_t> out(m);
    for (auto& c : out)
        c = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(alphabet));
    return out;
}

std::function<std::int64_t(std::mt19937_64&)> uniform_symbol(
    std::int64_t alphabet, std::int64_t offset = 0) {
    return [alphabet, offset](std::mt19937_64& rng) {
        return offset + static_cast<std::int64_t>(
                            rng() % static_cast<std::uint64_t>(alphabet));
    };
}

MeterEntry value_metric_entry(Metric metric, unsigned bits) {
    MeterEntry e;
    e.make = [metric, bits](std::uint64_t m, std::mt19937_64& rng) {
        return std::make_unique<RingEngine>(
            Relation::from_metric(metric, bits), OperatorKind::Sum,
            random_codes(m, rng, 2));
    };
    e.next_symbol = uniform_symbol(2);
    return e;
}

MeterEntry matrix_ring_entry(OperatorKind op) {
    MeterEntry e;
    e.make = [op](std::uint64_t m, std::mt19937_64& rng) {
        return std::make_unique<RingEngine>(
            Relation::from_matrix(gallery::exact_match_relation()), op,
            random_codes(m, rng, 2));
    };
    e.next_symbol = uniform_symbol(2);
    return e;
}

const std::map<std::string, MeterEntry>& registry() {
    static const std::map<std::string, MeterEntry> entries = [] {
        std::map<std::string, MeterEntry> r;
        r["naive-hamming"] = value_metric_entry(Metric::NotEqual, 1);
        r["naive-l1"] = value_metric_entry(Metric::AbsDiff, 1);
        r["naive-l2"] = value_metric_entry(Metric::SquaredDiff, 1);
        r["naive-crosscorr"] = value_metric_entry(Metric::Product, 1);
        {
            // Pattern over {0,1}, stream over {2,3}, |p-t| with MAX.
            MeterEntry e;
            e.make = [](std::uint64_t m, std::mt19937_64& rng) {
                return std::make_unique<RingEngine>(
                    Relation::from_metric(Metric::AbsDiff, 2),
                    OperatorKind::Max, random_codes(m, rng, 2));
            };
            e.next_symbol = uniform_symbol(2, 2);
            r["naive-linf"] = e;
        }
        r["naive-and"] = matrix_ring_entry(OperatorKind::And);
        r["naive-or"] = matrix_ring_entry(OperatorKind::Or);
        r["naive-eq"] = matrix_ring_entry(OperatorKind::Eq);
        r["naive-left"] = matrix_ring_entry(OperatorKind::Left);
        {
            MeterEntry e;
            e.make = [](std::uint64_t m, std::mt19937_64& rng) {
                Pattern p;
                for (std::uint64_t i = 0; i < m; ++i)
                    p.ids.push_back(static_cast<SymbolId>(rng() % 2));
                return std::make_unique<ConjunctionEngine>(
                    gallery::exact_match_relation(), p, rng());
            };
            e.next_symbol = uniform_symbol(2);
            r["conjunction"] = e;
        }
        {
            MeterEntry e;
            e.make = [](std::uint64_t m, std::mt19937_64& rng) {
                return std::make_unique<EditEngine>(random_codes(m, rng, 2));
            };
            e.next_symbol = uniform_symbol(2);
            r["edit"] = e;
        }
        {
            MeterEntry e;
            e.make = [](std::uint64_t m, std::mt19937_64& rng) {
                return std::make_unique<SwapEngine>(random_codes(m, rng, 2));
            };
            e.next_symbol = uniform_symbol(2);
            r["swap"] = e;
        }
        return r;
    }();
    return entries;
}

} // namespace

const std::vector<std::string>& meter_engine_ids() {
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> out;
        for (const auto& [id, _] : registry()) out.push_back(id);
        return out;
    }();
    return ids;
}

const MeterEntry& meter_entry(const std::string& engine_id) {
    auto it = registry().find(engine_id);
    if (it == registry().end())
        throw ParseError("unknown meter engine: " + engine_id);
    return it->second;
}

std::vector<SpaceSample> measure(const std::string& engine_id,
                                 const std::vector<std::uint64_t>& ms,
                                 std::uint64_t seed) {
    const MeterEntry& entry = meter_entry(engine_id);
    std::vector<SpaceSample> samples;
    for (std::uint64_t m : ms) {
        if (m == 0) throw RelationError("pattern length must be positive");
        std::mt19937_64 rng(split_seed(seed, m));
        auto engine = entry.make(m, rng);
        // Steady state: 3m > 2m characters consumed.
        for (std::uint64_t i = 0; i < 3 * m; ++i)
            engine->push(entry.next_symbol(rng));
        samples.push_back(
            {engine_id, m, engine->export_state().size_bits()});
    }
    return samples;
}

GrowthFit fit_growth(const std::vector<SpaceSample>& samples) {
    std::set<std::uint64_t> distinct;
    for (const auto& s : samples) distinct.insert(s.m);
    if (samples.size() < 4 || distinct.size() < 4)
        throw RelationError(
            "growth fit needs at least 4 samples with distinct m");
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    const double n = static_cast<double>(samples.size());
    for (const auto& s : samples) {
        if (s.state_bits == 0)
            throw RelationError("growth fit: zero-size state sample");
        const double x = std::log(static_cast<double>(s.m));
        const double y = std::log(static_cast<double>(s.state_bits));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
    }
    const double det = n * sxx - sx * sx;
    GrowthFit fit;
    fit.slope = (n * sxy - sx * sy) / det;
    fit.intercept = (sy - fit.slope * sx) / n;
    const double var_y = n * syy - sy * sy;
    fit.r2 = var_y == 0 ? 1.0
                        : (n * sxy - sx * sy) * (n * sxy - sx * sy) /
                              (det * var_y);
    return fit;
}

std::string samples_to_csv(const std::vector<SpaceSample>& samples) {
    std::ostringstream out;
    out << "engine_id,m,state_bits\n";
    for (const auto& s : samples)
        out << s.engine_id << ',' << s.m << ',' << s.state_bits << '\n';
    return out.str();
}

} // namespace relmatch
