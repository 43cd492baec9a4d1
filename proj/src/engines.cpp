#include "relmatch/engines.hpp"

#include <algorithm>

namespace relmatch {

namespace {
constexpr std::uint8_t kStateVersion = 1;
constexpr std::uint8_t kKindRing = 1;
constexpr std::uint8_t kKindConjunction = 2;
} // namespace

Relation Relation::from_matrix(DeltaMatrix matrix) {
    Relation r;
    r.matrix_ = std::make_shared<const DeltaMatrix>(std::move(matrix));
    return r;
}

Relation Relation::from_metric(Metric metric, unsigned symbol_bits,
                               std::int64_t code_offset) {
    if (symbol_bits == 0 || symbol_bits > 62)
        throw RelationError("metric relation symbol width must be in [1,62]");
    Relation r;
    r.metric_ = metric;
    r.symbol_bits_ = symbol_bits;
    r.code_offset_ = code_offset;
    return r;
}

std::int64_t Relation::delta(std::int64_t p, std::int64_t t) const {
    if (matrix_) {
        if (p < 0 || static_cast<std::uint64_t>(p) >= matrix_->rows())
            throw SymbolError("pattern code outside the matrix alphabet");
        if (t < 0 || static_cast<std::uint64_t>(t) >= matrix_->cols())
            throw SymbolError("text code outside the matrix alphabet");
        return matrix_->at(static_cast<SymbolId>(p), static_cast<SymbolId>(t));
    }
    switch (metric_) {
        case Metric::NotEqual: return p != t ? 1 : 0;
        case Metric::AbsDiff: return p >= t ? p - t : t - p;
        case Metric::SquaredDiff: return (p - t) * (p - t);
        case Metric::Product: return p * t;
    }
    throw InternalError("unreachable metric");
}

bool Relation::boolean_valued() const {
    if (matrix_) return matrix_->is_boolean();
    return metric_ == Metric::NotEqual;
}

const DeltaMatrix& Relation::matrix() const {
    if (!matrix_) throw RelationError("relation is not matrix-backed");
    return *matrix_;
}

unsigned Relation::pattern_bits() const {
    return matrix_ ? bit_width_for(matrix_->rows()) : symbol_bits_;
}

unsigned Relation::text_bits() const {
    return matrix_ ? bit_width_for(matrix_->cols()) : symbol_bits_;
}

std::int64_t operator_fold(OperatorKind op,
                           const std::vector<std::int64_t>& values) {
    if (values.empty()) throw InternalError("fold of an empty window");
    std::int64_t acc = values[0];
    for (std::size_t j = 1; j < values.size(); ++j) {
        const std::int64_t v = values[j];
        switch (op) {
            case OperatorKind::True: acc = 1; break;
            case OperatorKind::False: acc = 0; break;
            case OperatorKind::Left: break;
            case OperatorKind::Right: acc = v; break;
            case OperatorKind::And: acc = (acc != 0 && v != 0) ? 1 : 0; break;
            case OperatorKind::Or: acc = (acc != 0 || v != 0) ? 1 : 0; break;
            case OperatorKind::Eq: acc = acc == v ? 1 : 0; break;
            case OperatorKind::Neq: acc = acc != v ? 1 : 0; break;
            case OperatorKind::Sum: acc = acc + v; break;
            case OperatorKind::Max: acc = std::max(acc, v); break;
        }
    }
    return acc;
}

RingEngine::RingEngine(Relation relation, OperatorKind op,
                       std::vector<std::int64_t> pattern_codes)
    : relation_(std::move(relation)), op_(op),
      pattern_(std::move(pattern_codes)) {
    if (pattern_.empty()) throw RelationError("empty pattern");
    if (operator_requires_boolean(op_) && !relation_.boolean_valued())
        throw RelationError("operator " + operator_name(op_) +
                            " requires a Boolean relation");
    validate_pattern();
    window_.assign(pattern_.size(), 0);
}

RingEngine::RingEngine(Relation relation, OperatorKind op)
    : relation_(std::move(relation)), op_(op) {
    if (operator_requires_boolean(op_) && !relation_.boolean_valued())
        throw RelationError("operator " + operator_name(op_) +
                            " requires a Boolean relation");
}

void RingEngine::validate_pattern() const {
    if (!relation_.is_matrix()) return;
    for (std::int64_t p : pattern_)
        if (p < 0 || static_cast<std::uint64_t>(p) >= relation_.matrix().rows())
            throw SymbolError("pattern symbol outside the matrix alphabet");
}

std::optional<std::int64_t> RingEngine::push(std::int64_t code) {
    if (pattern_.empty()) throw StateError("engine has no pattern (empty shell)");
    if (relation_.is_matrix() &&
        (code < 0 || static_cast<std::uint64_t>(code) >= relation_.matrix().cols()))
        throw SymbolError("text symbol outside the matrix alphabet");
    window_[head_] = code;
    head_ = (head_ + 1) % window_.size();
    if (warm_ < window_.size()) ++warm_;
    return current();
}

std::int64_t RingEngine::fold() const {
    // Allocation-free left-fold; semantics identical to operator_fold.
    const std::size_t m = pattern_.size();
    std::int64_t acc = relation_.delta(pattern_[0], window_[head_ % m]);
    for (std::size_t j = 1; j < m; ++j) {
        const std::int64_t v =
            relation_.delta(pattern_[j], window_[(head_ + j) % m]);
        switch (op_) {
            case OperatorKind::True: acc = 1; break;
            case OperatorKind::False: acc = 0; break;
            case OperatorKind::Left: break;
            case OperatorKind::Right: acc = v; break;
            case OperatorKind::And: acc = (acc != 0 && v != 0) ? 1 : 0; break;
            case OperatorKind::Or: acc = (acc != 0 || v != 0) ? 1 : 0; break;
            case OperatorKind::Eq: acc = acc == v ? 1 : 0; break;
            case OperatorKind::Neq: acc = acc != v ? 1 : 0; break;
            case OperatorKind::Sum: acc = acc + v; break;
            case OperatorKind::Max: acc = std::max(acc, v); break;
        }
    }
    return acc;
}

std::optional<std::int64_t> RingEngine::current() const {
    if (pattern_.empty() || warm_ < pattern_.size()) return std::nullopt;
    return fold();
}

std::string RingEngine::engine_id() const {
    return "ring-" + operator_name(op_);
}

BitString RingEngine::export_state() const {
    if (pattern_.empty()) throw StateError("engine has no pattern (empty shell)");
    BitWriter w;
    w.write(kStateVersion, 8);
    w.write(kKindRing, 8);
    w.write(static_cast<unsigned>(op_), 4);
    w.write_packed(pattern_.size());
    w.write_packed(warm_);
    const unsigned pb = relation_.pattern_bits();
    const unsigned tb = relation_.text_bits();
    const std::int64_t off = relation_.code_offset();
    for (std::int64_t p : pattern_)
        w.write(static_cast<std::uint64_t>(p + off), pb);
    // Window, oldest first; only the consumed prefix before warm-up.
    const std::size_t m = pattern_.size();
    for (std::size_t j = m - warm_; j < m; ++j)
        w.write(static_cast<std::uint64_t>(window_[(head_ + j) % m] + off), tb);
    return w.finish();
}

void RingEngine::import_state(const BitString& bits) {
    BitReader r(bits);
    if (r.read(8) != kStateVersion)
        throw StateError("unsupported engine state version");
    if (r.read(8) != kKindRing)
        throw StateError("state was exported by a different engine kind");
    if (r.read(4) != static_cast<unsigned>(op_))
        throw StateError("state was exported under a different operator");
    const std::uint64_t m = r.read_packed();
    if (m == 0) throw StateError("state has empty pattern");
    const std::uint64_t warm = r.read_packed();
    if (warm > m) throw StateError("state window longer than the pattern");
    const unsigned pb = relation_.pattern_bits();
    const unsigned tb = relation_.text_bits();
    const std::int64_t off = relation_.code_offset();
    pattern_.assign(m, 0);
    for (auto& p : pattern_)
        p = static_cast<std::int64_t>(r.read(pb)) - off;
    window_.assign(m, 0);
    for (std::uint64_t j = 0; j < warm; ++j)
        window_[j] = static_cast<std::int64_t>(r.read(tb)) - off;
    head_ = warm % m;
    warm_ = warm;
    if (r.remaining() != 0) throw StateError("engine state has trailing bits");
    validate_pattern();
}

ConjunctionEngine::ConjunctionEngine(DeltaMatrix matrix, const Pattern& pattern,
                                     std::uint64_t seed, std::uint64_t ring_cap)
    : map_(CanonicalMap::build(matrix)), ring_cap_(ring_cap),
      seed_(seed), m_(pattern.length()) {
    if (m_ == 0) throw RelationError("empty pattern");
    auto canonical = canonicalize_pattern(map_, pattern);
    if (std::holds_alternative<AlwaysZero>(canonical)) {
        always_zero_ = true;
        return;
    }
    // Pattern symbols become the codes of their partner text
    // representatives, after which matching is exact matching in the
    // common code space.
    std::vector<std::uint64_t> codes;
    codes.reserve(m_);
    for (SymbolId id : std::get<Pattern>(canonical).ids)
        codes.push_back(map_.text_code(map_.partner_of(id)));
    matcher_ = std::make_unique<FingerprintMatcher>(codes, matcher_config());
}

ConjunctionEngine::ConjunctionEngine(DeltaMatrix matrix, std::uint64_t ring_cap)
    : map_(CanonicalMap::build(matrix)), ring_cap_(ring_cap) {}

FingerprintConfig ConjunctionEngine::matcher_config() const {
    FingerprintConfig c;
    c.seed = seed_;
    c.ring_cap = ring_cap_;
    // One spare code for dead text symbols, when the relation has any.
    c.symbol_bits =
        bit_width_for(map_.code_count() + (map_.has_dead_text() ? 1 : 0));
    return c;
}

std::optional<std::int64_t> ConjunctionEngine::push(std::int64_t code) {
    if (m_ == 0) throw StateError("engine has no pattern (empty shell)");
    if (code < 0 || static_cast<std::uint64_t>(code) >= map_.matrix().cols())
        throw SymbolError("text symbol outside the matrix alphabet");
    auto target = map_.text_target(static_cast<SymbolId>(code));
    if (dead_age_) ++*dead_age_;
    std::uint64_t matcher_code;
    if (target) {
        matcher_code = map_.text_code(*target);
    } else {
        matcher_code = map_.code_count(); // the spare non-matching code
        dead_age_ = 0;
    }
    if (dead_age_ && *dead_age_ >= m_) dead_age_.reset();
    if (matcher_) matcher_->push(matcher_code);
    ++count_;
    return output();
}

std::optional<std::int64_t> ConjunctionEngine::output() const {
    if (count_ < m_) return std::nullopt;
    if (always_zero_ || dead_age_) return 0;
    return matcher_->last_match() ? 1 : 0;
}

std::optional<std::int64_t> ConjunctionEngine::current() const {
    if (m_ == 0) return std::nullopt;
    return output();
}

BitString ConjunctionEngine::export_state() const {
    if (m_ == 0) throw StateError("engine has no pattern (empty shell)");
    BitWriter w;
    w.write(kStateVersion, 8);
    w.write(kKindConjunction, 8);
    w.write_bool(always_zero_);
    w.write_packed(m_);
    w.write_packed(count_);
    w.write_bool(dead_age_.has_value());
    if (dead_age_) w.write(*dead_age_, bit_width_for(m_));
    if (!always_zero_) {
        const BitString inner = matcher_->export_state();
        w.write_packed(inner.nbits);
        BitReader ir(inner);
        for (std::uint64_t i = 0; i < inner.nbits; ++i)
            w.write_bool(ir.read_bool());
    }
    return w.finish();
}

void ConjunctionEngine::import_state(const BitString& bits) {
    BitReader r(bits);
    if (r.read(8) != kStateVersion)
        throw StateError("unsupported engine state version");
    if (r.read(8) != kKindConjunction)
        throw StateError("state was exported by a different engine kind");
    always_zero_ = r.read_bool();
    m_ = r.read_packed();
    if (m_ == 0) throw StateError("state has empty pattern");
    count_ = r.read_packed();
    dead_age_.reset();
    if (r.read_bool()) {
        const std::uint64_t age = r.read(bit_width_for(m_));
        if (age >= m_) throw StateError("dead-symbol age outside the window");
        dead_age_ = age;
    }
    matcher_.reset();
    if (!always_zero_) {
        const std::uint64_t nbits = r.read_packed();
        BitWriter iw;
        for (std::uint64_t i = 0; i < nbits; ++i) iw.write_bool(r.read_bool());
        const BitString inner = iw.finish();
        matcher_ = std::make_unique<FingerprintMatcher>(matcher_config());
        matcher_->import_state(inner);
        if (matcher_->pattern_length() != m_)
            throw StateError("matcher pattern length mismatch");
    }
    if (r.remaining() != 0) throw StateError("engine state has trailing bits");
}

} // namespace relmatch
