#include "relmatch/fingerprint.hpp"

#include <random>

#include "relmatch/errors.hpp"
#include "relmatch/field.hpp"

namespace relmatch {

namespace {

constexpr std::uint8_t kStateVersion = 1;

bool is_power_of_two(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

std::uint64_t pick_base(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return 2 + rng() % (field::kPrime - 3);
}

void check_config(const FingerprintConfig& c) {
    if (!is_power_of_two(c.ring_cap))
        throw RelationError("fingerprint ring_cap must be a power of two");
    if (c.symbol_bits == 0 || c.symbol_bits > 32)
        throw RelationError("fingerprint symbol width must be in [1,32]");
}

} // namespace

FingerprintMatcher::FingerprintMatcher(
    const std::vector<std::uint64_t>& pattern_codes,
    const FingerprintConfig& config)
    : config_(config) {
    check_config(config_);
    if (pattern_codes.empty()) throw RelationError("empty pattern");
    m_ = pattern_codes.size();
    small_mode_ = m_ <= config_.ring_cap;
    base_ = pick_base(config_.seed);
    preprocess(pattern_codes);
}

FingerprintMatcher::FingerprintMatcher(const FingerprintConfig& config)
    : config_(config) {
    check_config(config_);
}

void FingerprintMatcher::preprocess(
    const std::vector<std::uint64_t>& pattern_codes) {
    const std::uint64_t limit = std::uint64_t{1} << config_.symbol_bits;
    for (std::uint64_t c : pattern_codes)
        if (c >= limit)
            throw SymbolError("pattern code does not fit the symbol width");

    const std::uint64_t head_len = std::min<std::uint64_t>(m_, config_.ring_cap);
    pattern_head_.assign(pattern_codes.begin(),
                         pattern_codes.begin() + head_len);
    ring_.assign(head_len, 0);
    ring_head_ = 0;
    n_ = 0;
    phi_ = 0;
    rpow_n_ = 1;
    last_match_ = false;
    levels_.clear();
    if (small_mode_) return;

    // Prefix fingerprints and the prefix (failure) function, both over
    // the whole pattern; transient preprocessing workspace.
    std::vector<std::uint64_t> pref_fp(m_ + 1, 0);
    std::uint64_t rp = 1;
    for (std::uint64_t j = 0; j < m_; ++j) {
        pref_fp[j + 1] = field::add(pref_fp[j], field::mul(pattern_codes[j], rp));
        rp = field::mul(rp, base_);
    }
    std::vector<std::uint64_t> border(m_ + 1, 0);
    for (std::uint64_t i = 1; i < m_; ++i) {
        std::uint64_t k = border[i];
        while (k > 0 && pattern_codes[i] != pattern_codes[k]) k = border[k];
        border[i + 1] = pattern_codes[i] == pattern_codes[k] ? k + 1 : 0;
    }

    std::vector<std::uint64_t> lens{config_.ring_cap};
    while (lens.back() * 2 < m_) lens.push_back(lens.back() * 2);
    for (std::size_t i = 0; i < lens.size(); ++i) {
        Level level;
        level.len = lens[i];
        level.next_len = i + 1 < lens.size() ? lens[i + 1] : m_;
        level.fp = pref_fp[level.len];
        level.period = level.len - border[level.len];
        level.periodic = level.period < level.len;
        level.fp_period = level.periodic ? pref_fp[level.period] : 0;
        levels_.push_back(level);
    }
    fp_full_ = pref_fp[m_];
}

std::uint64_t FingerprintMatcher::ring_len() const {
    return std::min<std::uint64_t>(n_, ring_.size());
}

void FingerprintMatcher::push_ring(std::uint64_t code) {
    ring_[ring_head_] = code;
    ring_head_ = (ring_head_ + 1) % ring_.size();
}

bool FingerprintMatcher::ring_suffix_equals(
    const std::vector<std::uint64_t>& prefix) const {
    // Only called once n_ >= ring size; ring_head_ then points at the
    // oldest element.
    for (std::size_t i = 0; i < ring_.size(); ++i)
        if (ring_[(ring_head_ + i) % ring_.size()] != prefix[i]) return false;
    return true;
}

bool FingerprintMatcher::push(std::uint64_t code) {
    if (m_ == 0) throw StateError("matcher has no pattern (empty shell)");
    if (code >= (std::uint64_t{1} << config_.symbol_bits))
        throw SymbolError("text code does not fit the symbol width");
    if (!small_mode_) {
        phi_ = field::add(phi_, field::mul(code, rpow_n_));
        rpow_n_ = field::mul(rpow_n_, base_);
    }
    push_ring(code);
    ++n_;
    last_match_ = false;

    if (small_mode_) {
        if (n_ >= m_ && ring_suffix_equals(pattern_head_)) last_match_ = true;
        return last_match_;
    }

    // Promotions, highest level first: a level's own due candidate is
    // popped before the level can receive one from below this push.
    for (std::size_t i = levels_.size(); i-- > 0;) {
        Level& level = levels_[i];
        if (level.count == 0 || level.first + level.next_len != n_) continue;
        auto [s, phi_s] = pop_candidate(level);
        const bool to_full = i + 1 == levels_.size();
        const std::uint64_t target = to_full ? fp_full_ : levels_[i + 1].fp;
        const std::uint64_t expected =
            field::mul(field::pow(base_, s), target);
        if (field::sub(phi_, phi_s) == expected) {
            if (to_full)
                last_match_ = true;
            else
                insert_candidate(levels_[i + 1], s, phi_s);
        }
    }

    // New candidates are exact: the ring just matched the retained
    // pattern head character by character.
    if (n_ >= config_.ring_cap && ring_suffix_equals(pattern_head_)) {
        const std::uint64_t s = n_ - config_.ring_cap;
        const std::uint64_t phi_s = field::sub(
            phi_, field::mul(field::pow(base_, s), levels_[0].fp));
        insert_candidate(levels_[0], s, phi_s);
    }
    return last_match_;
}

void FingerprintMatcher::insert_candidate(Level& level, std::uint64_t s,
                                          std::uint64_t phi_s) {
    if (level.count == 0) {
        level.first = s;
        level.phi_a = phi_s;
        level.step = 0;
        level.count = 1;
        return;
    }
    if (level.count == 1) {
        if (s <= level.first)
            throw InternalError("fingerprint candidates arrived out of order");
        level.step = s - level.first;
        // Two live starts of the same prefix overlap inside a window of
        // the prefix length, so their distance is one of its periods.
        if (!level.periodic || level.step < level.period ||
            level.step >= level.len)
            throw InternalError(
                "fingerprint collision: overlapping candidates of an "
                "aperiodic prefix");
        level.phi_b = phi_s;
        level.count = 2;
        return;
    }
    // From the third candidate on the spacing must be the minimal
    // period: anything else cannot come from true occurrences.
    if (level.count == 2 && level.step != level.period)
        throw InternalError(
            "fingerprint collision: third candidate with non-period spacing");
    if (s != level.first + level.count * level.step)
        throw InternalError(
            "fingerprint collision: candidate breaks the progression");
    ++level.count;
}

std::pair<std::uint64_t, std::uint64_t>
FingerprintMatcher::pop_candidate(Level& level) {
    const std::uint64_t s = level.first;
    const std::uint64_t phi_s = level.phi_a;
    if (level.count == 1) {
        level.count = 0;
    } else if (level.count == 2) {
        level.first += level.step;
        level.phi_a = level.phi_b;
        level.count = 1;
    } else {
        // step == period here; the new second candidate extends the
        // periodic run by one period block of the pattern head.
        level.first += level.step;
        level.phi_a = level.phi_b;
        level.phi_b = field::add(
            level.phi_a,
            field::mul(field::pow(base_, level.first), level.fp_period));
        --level.count;
    }
    return {s, phi_s};
}

std::vector<std::uint64_t> FingerprintMatcher::level_lengths() const {
    if (m_ == 0) throw StateError("matcher has no pattern (empty shell)");
    std::vector<std::uint64_t> out;
    for (std::uint64_t len = 1; len < m_; len <<= 1) out.push_back(len);
    out.push_back(m_);
    return out;
}

std::uint64_t FingerprintMatcher::level_fingerprint(std::uint64_t len) const {
    if (len == m_ && !small_mode_) return fp_full_;
    if (len <= pattern_head_.size()) {
        std::uint64_t fp = 0, rp = 1;
        for (std::uint64_t j = 0; j < len; ++j) {
            fp = field::add(fp, field::mul(pattern_head_[j], rp));
            rp = field::mul(rp, base_);
        }
        return fp;
    }
    for (const Level& level : levels_)
        if (level.len == len) return level.fp;
    throw SymbolError("no level tracks a prefix of this length");
}

BitString FingerprintMatcher::export_state() const {
    BitWriter w;
    w.write(kStateVersion, 8);
    w.write_bool(!small_mode_);
    w.write(config_.symbol_bits - 1, 6);
    w.write_packed(m_);
    w.write_packed(n_);
    w.write(base_, 61);
    w.write_bool(last_match_);
    for (std::uint64_t c : pattern_head_) w.write(c, config_.symbol_bits);
    const std::uint64_t rl = ring_len();
    for (std::uint64_t i = 0; i < rl; ++i) {
        const std::uint64_t idx =
            (ring_head_ + ring_.size() - rl + i) % ring_.size();
        w.write(ring_[idx], config_.symbol_bits);
    }
    if (!small_mode_) {
        w.write(phi_, 61);
        for (const Level& level : levels_) {
            const std::uint64_t span = level.next_len - level.len;
            w.write(level.fp, 61);
            w.write(level.period - 1, bit_width_for(level.len));
            w.write_bool(level.periodic);
            if (level.periodic) w.write(level.fp_period, 61);
            w.write(level.count, bit_width_for(span + 1));
            if (level.count >= 1) {
                w.write(n_ - level.first - level.len, bit_width_for(span));
                w.write(level.phi_a, 61);
            }
            if (level.count >= 2) {
                w.write(level.step - 1, bit_width_for(span));
                w.write(level.phi_b, 61);
            }
        }
        w.write(fp_full_, 61);
    }
    return w.finish();
}

void FingerprintMatcher::import_state(const BitString& bits) {
    BitReader r(bits);
    if (r.read(8) != kStateVersion)
        throw StateError("unsupported matcher state version");
    const bool leveled = r.read_bool();
    const unsigned width = static_cast<unsigned>(r.read(6)) + 1;
    if (width != config_.symbol_bits)
        throw StateError("matcher state symbol width mismatch");
    m_ = r.read_packed();
    if (m_ == 0) throw StateError("matcher state has empty pattern");
    small_mode_ = m_ <= config_.ring_cap;
    if (small_mode_ == leveled)
        throw StateError("matcher state mode does not fit this configuration");
    n_ = r.read_packed();
    base_ = r.read(61);
    if (base_ < 2 || base_ >= field::kPrime - 1)
        throw StateError("matcher state base out of range");
    last_match_ = r.read_bool();

    const std::uint64_t head_len = std::min<std::uint64_t>(m_, config_.ring_cap);
    pattern_head_.assign(head_len, 0);
    for (auto& c : pattern_head_) c = r.read(width);
    ring_.assign(head_len, 0);
    const std::uint64_t rl = std::min<std::uint64_t>(n_, head_len);
    for (std::uint64_t i = 0; i < rl; ++i) ring_[i] = r.read(width);
    ring_head_ = rl % head_len;

    levels_.clear();
    phi_ = 0;
    fp_full_ = 0;
    if (!small_mode_) {
        phi_ = r.read(61);
        std::vector<std::uint64_t> lens{config_.ring_cap};
        while (lens.back() * 2 < m_) lens.push_back(lens.back() * 2);
        for (std::size_t i = 0; i < lens.size(); ++i) {
            Level level;
            level.len = lens[i];
            level.next_len = i + 1 < lens.size() ? lens[i + 1] : m_;
            const std::uint64_t span = level.next_len - level.len;
            level.fp = r.read(61);
            level.period = r.read(bit_width_for(level.len)) + 1;
            level.periodic = r.read_bool();
            if (level.periodic != (level.period < level.len))
                throw StateError("matcher state period flag mismatch");
            if (level.periodic) level.fp_period = r.read(61);
            level.count = r.read(bit_width_for(span + 1));
            if (level.count > span)
                throw StateError("matcher state candidate count out of range");
            if (level.count >= 1) {
                const std::uint64_t offset = r.read(bit_width_for(span));
                if (offset >= span)
                    throw StateError("matcher state candidate age out of range");
                if (n_ < level.len + offset)
                    throw StateError("matcher state candidate precedes stream");
                level.first = n_ - level.len - offset;
                level.phi_a = r.read(61);
            }
            if (level.count >= 2) {
                level.step = r.read(bit_width_for(span)) + 1;
                level.phi_b = r.read(61);
            }
            levels_.push_back(level);
        }
        fp_full_ = r.read(61);
    }
    if (r.remaining() != 0) throw StateError("matcher state has trailing bits");
    rpow_n_ = field::pow(base_, n_);
}

} // namespace relmatch
