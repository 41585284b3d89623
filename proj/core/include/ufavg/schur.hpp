#pragma once

// Schur basis {|k,m,λ>} of (C^d)^⊗t for the collective action U ↦ U^⊗t.
//
// Sector k corresponds to a Young diagram. Within a sector the vectors form a
// D_G × D_C table: fixing λ gives a row G^k_λ carrying one copy of the
// irreducible representation, fixing m gives a column C^k_m carrying the
// commutant (permutation) representation. All indices are zero-based here;
// serialized documents use one-based sector labels.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "ufavg/numerics.hpp"

namespace ufavg {

class UnsupportedError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct YoungDiagram {
  std::vector<int> rows;  // boxes per row, weakly decreasing

  int boxes() const;
  int depth() const { return static_cast<int>(rows.size()); }
  bool operator==(const YoungDiagram&) const = default;
};

/// Rows of box entries, each entry in 1..t. Standard when rows and columns increase.
using YoungTableau = std::vector<std::vector<int>>;

/// Partitions of t into at most d parts, lexicographically decreasing.
std::vector<YoungDiagram> enumerate_diagrams(int t, int d);

/// Standard tableaux of `diagram`, ordered lexicographically by their rows.
std::vector<YoungTableau> standard_tableaux(const YoungDiagram& diagram);

bool is_standard(const YoungDiagram& diagram, const YoungTableau& tableau);

/// Operator on (C^d)^⊗t permuting tensor factors: factor i moves to slot perm[i].
ComplexMatrix permutation_operator(const std::vector<int>& perm, int d);

/// Young symmetrizer (row symmetrizer ∘ column antisymmetrizer) on (C^d)^⊗t.
/// Satisfies Y² = c·Y for a positive integer c.
ComplexMatrix young_projector(const YoungDiagram& diagram, const YoungTableau& tableau, int d);

struct SchurSector {
  YoungDiagram diagram;
  std::size_t dim_irrep = 0;     // D_G
  std::size_t multiplicity = 0;  // D_C
  std::vector<ComplexMatrix> vectors;  // row-major [m][λ], unit columns in C^(d^t)

  const ComplexMatrix& vector(std::size_t m, std::size_t lambda) const {
    return vectors.at(m * multiplicity + lambda);
  }
  std::size_t dimension() const { return dim_irrep * multiplicity; }
  /// Orthogonal projector Π̂_k onto the whole sector.
  ComplexMatrix projector() const;
};

struct SchurBasis {
  int d = 0;
  int t = 0;
  std::vector<SchurSector> sectors;

  std::size_t dimension() const;
  /// Matrix whose columns are all basis vectors, sector by sector, [m][λ]
  /// order within a sector (the Quantum Schur Transform).
  ComplexMatrix transform() const;
};

/// Unorthogonalized family e_{k,m,λ}: λ runs over standard tableaux of the
/// sector diagram, m over weights (most zeros first). Each row is generated
/// from the Young-symmetrized highest-weight ket by the collective lowering
/// operator, so the Gram matrix of every column {e_{k,m,λ}}_λ is the same.
std::vector<ComplexMatrix> schur_seed_vectors(const YoungDiagram& diagram, int d,
                                              const TolerancePolicy& policy = {});

/// Supported envelope: d = 2, 1 <= t <= 6. Throws UnsupportedError otherwise.
SchurBasis build_schur_basis(int d, int t, const TolerancePolicy& policy = {});

/// The hand-written t = 4 qubit basis: five symmetric states, the orthogonalized
/// spin-1 families e_{2,m,λ} and spin-0 pair f_{3,1,λ}. Only its sector
/// projectors are canonical; its m-labels are those of the hand-written list.
SchurBasis reference_basis_t4();

/// Whether (d, t) lies in the envelope accepted by build_schur_basis.
bool schur_envelope_contains(int d, int t);

}  // namespace ufavg
