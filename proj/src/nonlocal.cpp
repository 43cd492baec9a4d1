#include "relmatch/nonlocal.hpp"

#include <algorithm>

namespace relmatch {

namespace {
constexpr std::uint8_t kStateVersion = 1;
constexpr std::uint8_t kKindEdit = 3;
constexpr std::uint8_t kKindSwap = 4;

void export_window_engine(BitWriter& w, std::uint8_t kind, unsigned bits,
                          const std::vector<std::int64_t>& pattern,
                          const std::vector<std::int64_t>& window,
                          std::uint64_t head, std::uint64_t warm) {
    w.write(kStateVersion, 8);
    w.write(kind, 8);
    w.write_packed(pattern.size());
    w.write_packed(warm);
    for (std::int64_t p : pattern) w.write(static_cast<std::uint64_t>(p), bits);
    const std::size_t m = pattern.size();
    for (std::size_t j = m - warm; j < m; ++j)
        w.write(static_cast<std::uint64_t>(window[(head + j) % m]), bits);
}

void import_window_engine(BitReader& r, std::uint8_t kind, unsigned bits,
                          std::vector<std::int64_t>& pattern,
                          std::vector<std::int64_t>& window,
                          std::uint64_t& head, std::uint64_t& warm) {
    if (r.read(8) != kStateVersion)
        throw StateError("unsupported engine state version");
    if (r.read(8) != kind)
        throw StateError("state was exported by a different engine kind");
    const std::uint64_t m = r.read_packed();
    if (m == 0) throw StateError("state has empty pattern");
    warm = r.read_packed();
    if (warm > m) throw StateError("state window longer than the pattern");
    pattern.assign(m, 0);
    for (auto& p : pattern) p = static_cast<std::int64_t>(r.read(bits));
    window.assign(m, 0);
    for (std::uint64_t j = 0; j < warm; ++j)
        window[j] = static_cast<std::int64_t>(r.read(bits));
    head = warm % m;
    if (r.remaining() != 0) throw StateError("engine state has trailing bits");
}

void check_code(std::int64_t code, unsigned bits) {
    if (code < 0 || static_cast<std::uint64_t>(code) >= (std::uint64_t{1} << bits))
        throw SymbolError("symbol code does not fit the engine's width");
}

} // namespace

EditEngine::EditEngine(std::vector<std::int64_t> pattern_codes,
                       unsigned symbol_bits)
    : symbol_bits_(symbol_bits), pattern_(std::move(pattern_codes)) {
    if (pattern_.empty()) throw RelationError("empty pattern");
    for (std::int64_t p : pattern_) check_code(p, symbol_bits_);
    window_.assign(pattern_.size(), 0);
}

EditEngine::EditEngine(unsigned symbol_bits) : symbol_bits_(symbol_bits) {}

std::optional<std::int64_t> EditEngine::push(std::int64_t code) {
    if (pattern_.empty()) throw StateError("engine has no pattern (empty shell)");
    check_code(code, symbol_bits_);
    window_[head_] = code;
    head_ = (head_ + 1) % window_.size();
    if (warm_ < window_.size()) ++warm_;
    return current();
}

std::int64_t EditEngine::distance() const {
    // One rolling DP row; the workspace is rebuilt per position and is
    // not part of the persistent state.
    const std::size_t m = pattern_.size();
    std::vector<std::int64_t> row(m + 1);
    for (std::size_t j = 0; j <= m; ++j) row[j] = static_cast<std::int64_t>(j);
    for (std::size_t i = 1; i <= m; ++i) {
        std::int64_t diag = row[0];
        row[0] = static_cast<std::int64_t>(i);
        const std::int64_t p = pattern_[i - 1];
        for (std::size_t j = 1; j <= m; ++j) {
            const std::int64_t w = window_[(head_ + j - 1) % m];
            const std::int64_t prev = row[j];
            row[j] = std::min({row[j] + 1, row[j - 1] + 1,
                               diag + (p == w ? 0 : 1)});
            diag = prev;
        }
    }
    return row[m];
}

std::optional<std::int64_t> EditEngine::current() const {
    if (pattern_.empty() || warm_ < pattern_.size()) return std::nullopt;
    return distance();
}

BitString EditEngine::export_state() const {
    if (pattern_.empty()) throw StateError("engine has no pattern (empty shell)");
    BitWriter w;
    export_window_engine(w, kKindEdit, symbol_bits_, pattern_, window_, head_,
                         warm_);
    return w.finish();
}

void EditEngine::import_state(const BitString& bits) {
    BitReader r(bits);
    import_window_engine(r, kKindEdit, symbol_bits_, pattern_, window_, head_,
                         warm_);
}

SwapEngine::SwapEngine(std::vector<std::int64_t> pattern_codes,
                       unsigned symbol_bits)
    : symbol_bits_(symbol_bits), pattern_(std::move(pattern_codes)) {
    if (pattern_.empty()) throw RelationError("empty pattern");
    for (std::int64_t p : pattern_) check_code(p, symbol_bits_);
    window_.assign(pattern_.size(), 0);
}

SwapEngine::SwapEngine(unsigned symbol_bits) : symbol_bits_(symbol_bits) {}

std::optional<std::int64_t> SwapEngine::push(std::int64_t code) {
    if (pattern_.empty()) throw StateError("engine has no pattern (empty shell)");
    check_code(code, symbol_bits_);
    window_[head_] = code;
    head_ = (head_ + 1) % window_.size();
    if (warm_ < window_.size()) ++warm_;
    return current();
}

bool SwapEngine::matches() const {
    const std::size_t m = pattern_.size();
    auto win = [&](std::size_t j) { return window_[(head_ + j) % m]; };
    last_swaps_.clear();
    std::size_t j = 0;
    while (j < m) {
        if (pattern_[j] == win(j)) {
            ++j;
        } else if (j + 1 < m && pattern_[j] == win(j + 1) &&
                   pattern_[j + 1] == win(j)) {
            last_swaps_.push_back(j);
            j += 2;
        } else {
            last_swaps_.clear();
            return false;
        }
    }
    return true;
}

std::optional<std::int64_t> SwapEngine::current() const {
    if (pattern_.empty() || warm_ < pattern_.size()) return std::nullopt;
    return matches() ? 1 : 0;
}

BitString SwapEngine::export_state() const {
    if (pattern_.empty()) throw StateError("engine has no pattern (empty shell)");
    BitWriter w;
    export_window_engine(w, kKindSwap, symbol_bits_, pattern_, window_, head_,
                         warm_);
    return w.finish();
}

void SwapEngine::import_state(const BitString& bits) {
    BitReader r(bits);
    import_window_engine(r, kKindSwap, symbol_bits_, pattern_, window_, head_,
                         warm_);
}

namespace {

std::vector<std::int64_t> block_for(char symbol, bool pattern_side) {
    // Pattern side: '*' and 'x'; text side: 'a' and 'b'.
    const char* code = nullptr;
    if (pattern_side) {
        if (symbol == '*') code = "00100";
        if (symbol == 'x') code = "00010";
    } else {
        if (symbol == 'a') code = "00010";
        if (symbol == 'b') code = "01000";
    }
    if (!code)
        throw SymbolError(std::string("symbol outside the swap-encoding "
                                      "alphabet: ") + symbol);
    std::vector<std::int64_t> out;
    for (const char* c = code; *c; ++c) out.push_back(*c - '0');
    return out;
}

} // namespace

std::vector<std::int64_t> swap_encode_pattern(const std::string& pattern) {
    std::vector<std::int64_t> out;
    out.reserve(pattern.size() * 5);
    for (char c : pattern) {
        auto block = block_for(c, true);
        out.insert(out.end(), block.begin(), block.end());
    }
    return out;
}

std::vector<std::int64_t> swap_encode_text_symbol(char symbol) {
    return block_for(symbol, false);
}

} // namespace relmatch
