#pragma once

#include <optional>
#include <string>

#include "relmatch/relation.hpp"

namespace relmatch {

/// The ten supported aggregation operators. The window distance is the
/// left-fold of the per-position relation values under the operator:
///   d(i) = op-fold of Delta(P[j], T[i-m+1+j]) over j = 0..m-1
/// TRUE..NEQ are the associative Boolean operators and require a
/// Boolean matrix; SUM and MAX accept any non-negative integer matrix.
enum class OperatorKind {
    True,
    False,
    Left,  // a (+) b = a : fold value is Delta(P[0], window[0])
    Right, // a (+) b = b : fold value is Delta(P[m-1], window[m-1])
    And,
    Or,
    Eq,  // XNOR fold: 1 iff Delta = 0 at an even number of positions
    Neq, // XOR fold:  1 iff Delta = 1 at an odd number of positions
    Sum,
    Max,
};

OperatorKind operator_from_name(const std::string& name);
std::string operator_name(OperatorKind op);
bool operator_requires_boolean(OperatorKind op);

enum class SpaceClass {
    Constant,    // O(1) state after preprocessing
    Logarithmic, // polylog state: Omega(log m) necessary, O(log^2 m) achievable
    Linear,      // Omega(m) state necessary
};

std::string space_class_name(SpaceClass c);

/// Two rows and two columns whose 2x2 submatrix contains exactly three
/// ones, i.e. equals [[1,1],[1,0]] under some row/column permutation.
struct WildcardWitness {
    SymbolId row_a, row_b;
    SymbolId col_a, col_b;
};

struct ClassificationReport {
    bool valid = false;
    OperatorKind op = OperatorKind::And;
    // Wildcard structure; set for Boolean matrices only.
    std::optional<bool> contains_wildcard;
    std::optional<bool> contains_negated_wildcard;
    std::optional<WildcardWitness> witness;
    // Deduplicated/pruned matrix; present for AND without the wildcard
    // submatrix (from the matrix itself) and for OR without the negated
    // one (from the negated matrix). Always a permuted identity.
    std::optional<DeltaMatrix> reduced_matrix;
    std::optional<SpaceClass> space_class;
};

std::string report_to_json(const ClassificationReport& r,
                           const DeltaMatrix& matrix);

/// True iff some 2 rows x 2 columns of the Boolean matrix form
/// [[1,1],[1,0]] up to permutation; equivalently, iff the four entries
/// contain exactly three ones. Returns a witness when present.
std::pair<bool, std::optional<WildcardWitness>>
contains_wildcard_submatrix(const DeltaMatrix& matrix);

/// Remove duplicate rows and columns (keeping the enumeration-earliest
/// member of each duplicate group), then drop all-zero rows and
/// columns. Requires a Boolean matrix without the wildcard submatrix;
/// the result is then always a permuted identity matrix.
DeltaMatrix reduce_matrix(const DeltaMatrix& matrix);

/// True iff every row and every column contains exactly one 1.
bool is_permuted_identity(const DeltaMatrix& matrix);

/// Whether some pattern makes the windowed problem depend on both the
/// pattern and the text. Decided by closed-form predicates over the
/// matrix rows (see classify.cpp for the derivations); the test suite
/// checks them against an exhaustive independence search.
bool validity(const DeltaMatrix& matrix, OperatorKind op);

/// Assign the space class of a valid (operator, matrix) pair.
/// TRUE/FALSE/RIGHT are always classified Constant with valid=false;
/// any other operator on an invalid matrix throws RelationError.
ClassificationReport classify(const DeltaMatrix& matrix, OperatorKind op);

} // namespace relmatch
