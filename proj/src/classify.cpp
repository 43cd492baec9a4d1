#include "relmatch/classify.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include <json.hpp>

namespace relmatch {

OperatorKind operator_from_name(const std::string& name) {
    static const std::map<std::string, OperatorKind> table = {
        {"TRUE", OperatorKind::True}, {"FALSE", OperatorKind::False},
        {"LEFT", OperatorKind::Left}, {"RIGHT", OperatorKind::Right},
        {"AND", OperatorKind::And},   {"OR", OperatorKind::Or},
        {"EQ", OperatorKind::Eq},     {"NEQ", OperatorKind::Neq},
        {"SUM", OperatorKind::Sum},   {"MAX", OperatorKind::Max},
    };
    auto it = table.find(name);
    if (it == table.end()) throw ParseError("unknown operator: " + name);
    return it->second;
}

std::string operator_name(OperatorKind op) {
    switch (op) {
        case OperatorKind::True: return "TRUE";
        case OperatorKind::False: return "FALSE";
        case OperatorKind::Left: return "LEFT";
        case OperatorKind::Right: return "RIGHT";
        case OperatorKind::And: return "AND";
        case OperatorKind::Or: return "OR";
        case OperatorKind::Eq: return "EQ";
        case OperatorKind::Neq: return "NEQ";
        case OperatorKind::Sum: return "SUM";
        case OperatorKind::Max: return "MAX";
    }
    throw InternalError("unreachable operator kind");
}

bool operator_requires_boolean(OperatorKind op) {
    return op != OperatorKind::Sum && op != OperatorKind::Max;
}

std::string space_class_name(SpaceClass c) {
    switch (c) {
        case SpaceClass::Constant: return "CONSTANT";
        case SpaceClass::Logarithmic: return "LOGARITHMIC";
        case SpaceClass::Linear: return "LINEAR";
    }
    throw InternalError("unreachable space class");
}

std::pair<bool, std::optional<WildcardWitness>>
contains_wildcard_submatrix(const DeltaMatrix& matrix) {
    if (!matrix.is_boolean())
        throw RelationError("wildcard detection requires a Boolean matrix");
    const SymbolId nr = static_cast<SymbolId>(matrix.rows());
    const SymbolId nc = static_cast<SymbolId>(matrix.cols());
    // For each row pair, a wildcard submatrix exists iff some column
    // reads (1,1) and another reads (1,0) or (0,1): the four entries
    // then hold exactly three ones. O(rows^2 * cols).
    for (SymbolId r1 = 0; r1 < nr; ++r1) {
        for (SymbolId r2 = r1 + 1; r2 < nr; ++r2) {
            std::optional<SymbolId> both, one;
            for (SymbolId c = 0; c < nc; ++c) {
                const auto a = matrix.at(r1, c), b = matrix.at(r2, c);
                if (a == 1 && b == 1 && !both) both = c;
                if (a + b == 1 && !one) one = c;
            }
            if (both && one)
                return {true, WildcardWitness{r1, r2, *both, *one}};
        }
    }
    return {false, std::nullopt};
}

namespace {

std::vector<SymbolId> keep_first_of_duplicates(
    std::size_t n, const std::function<std::vector<std::int64_t>(SymbolId)>& line) {
    std::vector<SymbolId> kept;
    std::vector<std::vector<std::int64_t>> seen;
    for (SymbolId i = 0; i < n; ++i) {
        auto v = line(i);
        if (std::find(seen.begin(), seen.end(), v) == seen.end()) {
            seen.push_back(std::move(v));
            kept.push_back(i);
        }
    }
    return kept;
}

bool all_zero(const std::vector<std::int64_t>& v) {
    return std::all_of(v.begin(), v.end(), [](auto x) { return x == 0; });
}

} // namespace

DeltaMatrix reduce_matrix(const DeltaMatrix& matrix) {
    auto [wild, _] = contains_wildcard_submatrix(matrix);
    if (wild)
        throw RelationError(
            "matrix contains the wildcard submatrix; it has no identity reduction");

    // Duplicate detection compares full rows/columns of the original
    // matrix. A removed row always duplicates a kept one, so column
    // duplicate groups (and all-zero tests) are unchanged by the row
    // removals, and the two passes are independent.
    auto rows = keep_first_of_duplicates(
        matrix.rows(), [&](SymbolId r) { return matrix.row(r); });
    auto cols = keep_first_of_duplicates(
        matrix.cols(), [&](SymbolId c) { return matrix.col(c); });

    std::erase_if(rows, [&](SymbolId r) { return all_zero(matrix.row(r)); });
    std::erase_if(cols, [&](SymbolId c) { return all_zero(matrix.col(c)); });

    std::vector<std::string> row_tokens, col_tokens;
    for (SymbolId r : rows) row_tokens.push_back(matrix.pattern_alphabet().token(r));
    for (SymbolId c : cols) col_tokens.push_back(matrix.text_alphabet().token(c));
    if (rows.empty() || cols.empty())
        throw RelationError("matrix reduces to nothing: all entries are zero");

    std::vector<std::vector<std::int64_t>> entries;
    for (SymbolId r : rows) {
        std::vector<std::int64_t> line;
        for (SymbolId c : cols) line.push_back(matrix.at(r, c));
        entries.push_back(std::move(line));
    }
    DeltaMatrix reduced(Alphabet(row_tokens), Alphabet(col_tokens),
                        std::move(entries));
    if (!is_permuted_identity(reduced))
        throw InternalError("reduction of a wildcard-free matrix must be a "
                            "permuted identity");
    return reduced;
}

bool is_permuted_identity(const DeltaMatrix& matrix) {
    if (matrix.rows() != matrix.cols() || !matrix.is_boolean()) return false;
    for (SymbolId r = 0; r < matrix.rows(); ++r) {
        auto row = matrix.row(r);
        if (std::count(row.begin(), row.end(), 1) != 1) return false;
    }
    for (SymbolId c = 0; c < matrix.cols(); ++c) {
        auto col = matrix.col(c);
        if (std::count(col.begin(), col.end(), 1) != 1) return false;
    }
    return true;
}

namespace {

// Row statistics backing the validity predicates.
struct RowFacts {
    bool two_distinct_rows = false;
    bool two_distinct_nonzero_rows = false;
    bool two_distinct_nonone_rows = false;
    bool some_row_nonconstant = false;
};

RowFacts row_facts(const DeltaMatrix& m) {
    RowFacts f;
    std::vector<std::vector<std::int64_t>> rows;
    for (SymbolId r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
    auto nonzero = [](const std::vector<std::int64_t>& v) {
        return std::any_of(v.begin(), v.end(), [](auto x) { return x != 0; });
    };
    auto nonone = [](const std::vector<std::int64_t>& v) {
        return std::any_of(v.begin(), v.end(), [](auto x) { return x != 1; });
    };
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (std::adjacent_find(rows[i].begin(), rows[i].end(),
                               std::not_equal_to<>()) != rows[i].end())
            f.some_row_nonconstant = true;
        for (std::size_t j = i + 1; j < rows.size(); ++j) {
            if (rows[i] == rows[j]) continue;
            f.two_distinct_rows = true;
            if (nonzero(rows[i]) && nonzero(rows[j]))
                f.two_distinct_nonzero_rows = true;
            if (nonone(rows[i]) && nonone(rows[j]))
                f.two_distinct_nonone_rows = true;
        }
    }
    return f;
}

} // namespace

// Validity means: some pattern P makes the output depend on the text
// (not text independent) while P also contains two symbols with
// different matrix rows (not pattern independent). Closed forms, with
// the one-line arguments; the test suite re-checks each against an
// exhaustive search over small patterns and windows.
//
//   AND:  two distinct rows, neither all-zero. Such x,y give P=xy a 1
//         output (pick a 1 in each row) and a 0 output (the rows
//         differ, so one has a 0 somewhere); an all-zero row in P
//         forces constant 0, and a single distinct row value forces
//         pattern independence.
//   OR:   the De Morgan dual: two distinct rows, neither all-one.
//   SUM/EQ/NEQ/LEFT: two distinct rows AND some non-constant row.
//         Changing one window character under a non-constant row moves
//         the sum / flips the parity / changes Delta(P[0], w); all
//         rows constant makes the output a function of P alone, and a
//         single distinct row value is pattern independence.
//   MAX:  some pair of distinct rows x,y with
//         max(max-entry) > max(min-entry): the window can then realise
//         two different maxima. A row whose minimum dominates every
//         other row's maximum pins the output (masking), so the plain
//         "some row non-constant" test is not sufficient here.
//   TRUE/FALSE/RIGHT: always reported invalid. TRUE/FALSE have
//         constant output; RIGHT depends on one trailing character and
//         is solvable in constant space, so it is flagged degenerate
//         alongside them rather than classified by the search.
bool validity(const DeltaMatrix& matrix, OperatorKind op) {
    if (operator_requires_boolean(op) && !matrix.is_boolean())
        throw RelationError("operator " + operator_name(op) +
                            " requires a Boolean matrix");
    const RowFacts f = row_facts(matrix);
    switch (op) {
        case OperatorKind::True:
        case OperatorKind::False:
        case OperatorKind::Right:
            return false;
        case OperatorKind::And:
            return f.two_distinct_nonzero_rows;
        case OperatorKind::Or:
            return f.two_distinct_nonone_rows;
        case OperatorKind::Sum:
        case OperatorKind::Eq:
        case OperatorKind::Neq:
        case OperatorKind::Left:
            return f.two_distinct_rows && f.some_row_nonconstant;
        case OperatorKind::Max: {
            std::vector<std::vector<std::int64_t>> rows;
            for (SymbolId r = 0; r < matrix.rows(); ++r)
                rows.push_back(matrix.row(r));
            for (std::size_t i = 0; i < rows.size(); ++i) {
                for (std::size_t j = i + 1; j < rows.size(); ++j) {
                    if (rows[i] == rows[j]) continue;
                    auto [mi1, ma1] =
                        std::minmax_element(rows[i].begin(), rows[i].end());
                    auto [mi2, ma2] =
                        std::minmax_element(rows[j].begin(), rows[j].end());
                    if (std::max(*ma1, *ma2) > std::max(*mi1, *mi2))
                        return true;
                }
            }
            return false;
        }
    }
    throw InternalError("unreachable operator kind");
}

ClassificationReport classify(const DeltaMatrix& matrix, OperatorKind op) {
    ClassificationReport r;
    r.op = op;
    r.valid = validity(matrix, op);
    if (matrix.is_boolean()) {
        auto [w, witness] = contains_wildcard_submatrix(matrix);
        r.contains_wildcard = w;
        r.witness = witness;
        r.contains_negated_wildcard =
            contains_wildcard_submatrix(matrix.negated()).first;
    }

    switch (op) {
        case OperatorKind::True:
        case OperatorKind::False:
        case OperatorKind::Right:
            // Degenerate but classifiable: constant state suffices.
            r.space_class = SpaceClass::Constant;
            return r;
        default:
            break;
    }
    if (!r.valid)
        throw RelationError("invalid (operator, matrix) pair: every pattern "
                            "is text or pattern independent");

    switch (op) {
        case OperatorKind::Left:
        case OperatorKind::Eq:
        case OperatorKind::Neq:
        case OperatorKind::Sum:
        case OperatorKind::Max:
            r.space_class = SpaceClass::Linear;
            break;
        case OperatorKind::And:
            if (*r.contains_wildcard) {
                r.space_class = SpaceClass::Linear;
            } else {
                r.space_class = SpaceClass::Logarithmic;
                r.reduced_matrix = reduce_matrix(matrix);
            }
            break;
        case OperatorKind::Or:
            if (*r.contains_negated_wildcard) {
                r.space_class = SpaceClass::Linear;
            } else {
                r.space_class = SpaceClass::Logarithmic;
                r.reduced_matrix = reduce_matrix(matrix.negated());
            }
            break;
        default:
            throw InternalError("unreachable classify branch");
    }
    return r;
}

std::string report_to_json(const ClassificationReport& r,
                           const DeltaMatrix& matrix) {
    nlohmann::json j;
    j["valid"] = r.valid;
    j["operator"] = operator_name(r.op);
    if (r.contains_wildcard) j["contains_wildcard"] = *r.contains_wildcard;
    if (r.contains_negated_wildcard)
        j["contains_negated_wildcard"] = *r.contains_negated_wildcard;
    if (r.witness) {
        j["witness"] = {
            {"pattern_symbols",
             {matrix.pattern_alphabet().token(r.witness->row_a),
              matrix.pattern_alphabet().token(r.witness->row_b)}},
            {"text_symbols",
             {matrix.text_alphabet().token(r.witness->col_a),
              matrix.text_alphabet().token(r.witness->col_b)}},
        };
    }
    if (r.reduced_matrix)
        j["reduced_matrix"] =
            nlohmann::json::parse(serialize_delta_matrix(*r.reduced_matrix));
    if (r.space_class) j["space_class"] = space_class_name(*r.space_class);
    return j.dump();
}

} // namespace relmatch
