#include "relmatch/relation.hpp"

#include <charconv>

#include <json.hpp>

namespace relmatch {

Alphabet::Alphabet(std::vector<std::string> symbols)
    : symbols_(std::move(symbols)) {
    if (symbols_.empty())
        throw ParseError("alphabet must contain at least one symbol");
    for (SymbolId i = 0; i < symbols_.size(); ++i) {
        auto [_, inserted] = index_.emplace(symbols_[i], i);
        if (!inserted)
            throw SymbolError("duplicate symbol in alphabet: " + symbols_[i]);
    }
}

const std::string& Alphabet::token(SymbolId id) const {
    if (id >= symbols_.size()) throw SymbolError("symbol id out of range");
    return symbols_[id];
}

SymbolId Alphabet::id(const std::string& token) const {
    auto it = index_.find(token);
    if (it == index_.end())
        throw SymbolError("unknown symbol: " + token);
    return it->second;
}

std::optional<SymbolId> Alphabet::find(const std::string& token) const {
    auto it = index_.find(token);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::int64_t Alphabet::value(SymbolId id) const {
    const std::string& tok = token(id);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw SymbolError("symbol is not integer-valued: " + tok);
    return v;
}

bool Alphabet::operator==(const Alphabet& other) const {
    return symbols_ == other.symbols_;
}

DeltaMatrix::DeltaMatrix(Alphabet pattern_alphabet, Alphabet text_alphabet,
                         std::vector<std::vector<std::int64_t>> entries)
    : pattern_alphabet_(std::move(pattern_alphabet)),
      text_alphabet_(std::move(text_alphabet)) {
    if (entries.size() != pattern_alphabet_.size())
        throw ParseError("entry table has wrong number of rows");
    entries_.reserve(rows() * cols());
    for (const auto& row : entries) {
        if (row.size() != text_alphabet_.size())
            throw ParseError("ragged or incomplete entry table");
        for (std::int64_t v : row) {
            if (v < 0)
                throw ParseError("matrix entries must be non-negative integers");
            entries_.push_back(v);
        }
    }
}

std::int64_t DeltaMatrix::at(SymbolId p, SymbolId t) const {
    if (p >= rows()) throw SymbolError("pattern symbol id out of range");
    if (t >= cols()) throw SymbolError("text symbol id out of range");
    return entries_[p * cols() + t];
}

std::int64_t DeltaMatrix::at_tokens(const std::string& p,
                                    const std::string& t) const {
    return at(pattern_alphabet_.id(p), text_alphabet_.id(t));
}

std::vector<std::int64_t> DeltaMatrix::row(SymbolId p) const {
    std::vector<std::int64_t> out(cols());
    for (SymbolId t = 0; t < cols(); ++t) out[t] = at(p, t);
    return out;
}

std::vector<std::int64_t> DeltaMatrix::col(SymbolId t) const {
    std::vector<std::int64_t> out(rows());
    for (SymbolId p = 0; p < rows(); ++p) out[p] = at(p, t);
    return out;
}

bool DeltaMatrix::is_boolean() const {
    for (std::int64_t v : entries_)
        if (v != 0 && v != 1) return false;
    return true;
}

DeltaMatrix DeltaMatrix::negated() const {
    if (!is_boolean())
        throw RelationError("negation is defined for Boolean matrices only");
    std::vector<std::vector<std::int64_t>> rows_out;
    rows_out.reserve(rows());
    for (SymbolId p = 0; p < rows(); ++p) {
        auto r = row(p);
        for (auto& v : r) v = 1 - v;
        rows_out.push_back(std::move(r));
    }
    return DeltaMatrix(pattern_alphabet_, text_alphabet_, std::move(rows_out));
}

bool DeltaMatrix::operator==(const DeltaMatrix& other) const {
    return pattern_alphabet_ == other.pattern_alphabet_ &&
           text_alphabet_ == other.text_alphabet_ && entries_ == other.entries_;
}

Pattern make_pattern(const Alphabet& alphabet,
                     const std::vector<std::string>& tokens) {
    Pattern p;
    p.ids.reserve(tokens.size());
    for (const auto& tok : tokens) p.ids.push_back(alphabet.id(tok));
    return p;
}

namespace {

std::vector<std::string> parse_symbol_list(const nlohmann::json& j,
                                           const char* field) {
    if (!j.contains(field) || !j[field].is_array())
        throw ParseError(std::string("matrix document: missing array '") +
                         field + "'");
    std::vector<std::string> out;
    for (const auto& s : j[field]) {
        if (s.is_string())
            out.push_back(s.get<std::string>());
        else if (s.is_number_integer())
            out.push_back(std::to_string(s.get<std::int64_t>()));
        else
            throw ParseError(std::string("matrix document: '") + field +
                             "' entries must be strings or integers");
    }
    return out;
}

} // namespace

DeltaMatrix load_delta_matrix(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("matrix document is not valid JSON: ") +
                         e.what());
    }
    Alphabet pa(parse_symbol_list(j, "pattern_alphabet"));
    Alphabet ta(parse_symbol_list(j, "text_alphabet"));
    if (!j.contains("entries") || !j["entries"].is_array())
        throw ParseError("matrix document: missing array 'entries'");
    std::vector<std::vector<std::int64_t>> entries;
    for (const auto& row : j["entries"]) {
        if (!row.is_array())
            throw ParseError("matrix document: 'entries' rows must be arrays");
        std::vector<std::int64_t> r;
        for (const auto& v : row) {
            if (!v.is_number_integer())
                throw ParseError("matrix document: non-integer entry");
            r.push_back(v.get<std::int64_t>());
        }
        entries.push_back(std::move(r));
    }
    return DeltaMatrix(std::move(pa), std::move(ta), std::move(entries));
}

std::string serialize_delta_matrix(const DeltaMatrix& m) {
    nlohmann::json j;
    j["pattern_alphabet"] = m.pattern_alphabet().tokens();
    j["text_alphabet"] = m.text_alphabet().tokens();
    auto rows = nlohmann::json::array();
    for (SymbolId p = 0; p < m.rows(); ++p) rows.push_back(m.row(p));
    j["entries"] = rows;
    return j.dump();
}

} // namespace relmatch
