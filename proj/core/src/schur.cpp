#include "ufavg/schur.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>
#include <string_view>
#include <utility>

namespace ufavg {

namespace {

std::size_t ipow(std::size_t base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

// Digits of `index` in base d, most significant (tensor factor 0) first.
std::vector<int> digits_of(std::size_t index, int d, int t) {
  std::vector<int> digits(static_cast<std::size_t>(t));
  for (int i = t - 1; i >= 0; --i) {
    digits[static_cast<std::size_t>(i)] = static_cast<int>(index % static_cast<std::size_t>(d));
    index /= static_cast<std::size_t>(d);
  }
  return digits;
}

std::size_t index_of(const std::vector<int>& digits, int d) {
  std::size_t index = 0;
  for (int digit : digits) index = index * static_cast<std::size_t>(d) + static_cast<std::size_t>(digit);
  return index;
}

// Image index of every basis ket under the factor permutation.
std::vector<std::size_t> permuted_indices(const std::vector<int>& perm, int d) {
  const int t = static_cast<int>(perm.size());
  const std::size_t n = ipow(static_cast<std::size_t>(d), t);
  std::vector<std::size_t> image(n);
  std::vector<int> moved(perm.size());
  for (std::size_t idx = 0; idx < n; ++idx) {
    const auto digits = digits_of(idx, d, t);
    for (std::size_t i = 0; i < perm.size(); ++i) moved[static_cast<std::size_t>(perm[i])] = digits[i];
    image[idx] = index_of(moved, d);
  }
  return image;
}

int permutation_sign(const std::vector<int>& perm) {
  int sign = 1;
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

// All permutations of {0..t-1} that map each group (list of positions) onto itself.
std::vector<std::vector<int>> group_permutations(const std::vector<std::vector<int>>& groups, int t) {
  std::vector<std::vector<int>> result;
  std::vector<int> perm(static_cast<std::size_t>(t));
  std::iota(perm.begin(), perm.end(), 0);

  std::function<void(std::size_t)> recurse = [&](std::size_t g) {
    if (g == groups.size()) {
      result.push_back(perm);
      return;
    }
    std::vector<int> targets = groups[g];
    std::sort(targets.begin(), targets.end());
    do {
      for (std::size_t i = 0; i < groups[g].size(); ++i) {
        perm[static_cast<std::size_t>(groups[g][i])] = targets[i];
      }
      recurse(g + 1);
    } while (std::next_permutation(targets.begin(), targets.end()));
    for (int p : groups[g]) perm[static_cast<std::size_t>(p)] = p;
  };
  recurse(0);
  return result;
}

std::vector<std::vector<int>> tableau_rows_as_positions(const YoungTableau& tableau) {
  std::vector<std::vector<int>> rows;
  for (const auto& row : tableau) {
    std::vector<int> r;
    for (int entry : row) r.push_back(entry - 1);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<std::vector<int>> tableau_columns_as_positions(const YoungTableau& tableau) {
  std::vector<std::vector<int>> cols;
  if (tableau.empty()) return cols;
  for (std::size_t c = 0; c < tableau.front().size(); ++c) {
    std::vector<int> col;
    for (const auto& row : tableau) {
      if (c < row.size()) col.push_back(row[c] - 1);
    }
    cols.push_back(std::move(col));
  }
  return cols;
}

// Collective lowering Σ_q σ_-^(q) with σ_-|0> = |1> on qubit registers.
ComplexMatrix lower(const ComplexMatrix& v, int t) {
  ComplexMatrix out(v.rows(), 1);
  for (std::size_t idx = 0; idx < v.rows(); ++idx) {
    const Complex amp = v(idx, 0);
    if (amp == Complex{}) continue;
    for (int q = 0; q < t; ++q) {
      const std::size_t bit = std::size_t{1} << (t - 1 - q);
      if ((idx & bit) == 0) out(idx | bit, 0) += amp;
    }
  }
  return out;
}

// Makes the first entry with non-negligible magnitude real and positive.
Complex leading_phase(const ComplexMatrix& v, double tol) {
  for (const auto& z : v.data()) {
    if (std::abs(z) > tol) return z / std::abs(z);
  }
  return 1.0;
}

std::size_t count_standard_tableaux(const YoungDiagram& diagram) {
  return standard_tableaux(diagram).size();
}

}  // namespace

int YoungDiagram::boxes() const { return std::accumulate(rows.begin(), rows.end(), 0); }

std::vector<YoungDiagram> enumerate_diagrams(int t, int d) {
  if (t < 1 || d < 1) throw std::invalid_argument("enumerate_diagrams: need t >= 1 and d >= 1");
  std::vector<YoungDiagram> out;
  std::vector<int> current;
  std::function<void(int, int)> recurse = [&](int remaining, int max_part) {
    if (remaining == 0) {
      out.push_back(YoungDiagram{current});
      return;
    }
    if (static_cast<int>(current.size()) == d) return;
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
      current.push_back(part);
      recurse(remaining - part, part);
      current.pop_back();
    }
  };
  recurse(t, t);
  return out;
}

bool is_standard(const YoungDiagram& diagram, const YoungTableau& tableau) {
  if (tableau.size() != diagram.rows.size()) return false;
  std::vector<int> seen;
  for (std::size_t r = 0; r < tableau.size(); ++r) {
    if (static_cast<int>(tableau[r].size()) != diagram.rows[r]) return false;
    for (std::size_t c = 0; c < tableau[r].size(); ++c) {
      if (c > 0 && tableau[r][c] <= tableau[r][c - 1]) return false;
      if (r > 0 && tableau[r][c] <= tableau[r - 1][c]) return false;
      seen.push_back(tableau[r][c]);
    }
  }
  std::sort(seen.begin(), seen.end());
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (seen[i] != static_cast<int>(i) + 1) return false;
  }
  return true;
}

std::vector<YoungTableau> standard_tableaux(const YoungDiagram& diagram) {
  // Place entries 1..n in turn; entry e may go at the end of any row whose
  // length stays within the diagram and does not exceed the row above.
  const int n = diagram.boxes();
  std::vector<YoungTableau> out;
  YoungTableau current(diagram.rows.size());
  std::function<void(int)> place = [&](int entry) {
    if (entry > n) {
      out.push_back(current);
      return;
    }
    for (std::size_t r = 0; r < current.size(); ++r) {
      const auto len = static_cast<int>(current[r].size());
      if (len >= diagram.rows[r]) continue;
      if (r > 0 && len >= static_cast<int>(current[r - 1].size())) continue;
      current[r].push_back(entry);
      place(entry + 1);
      current[r].pop_back();
    }
  };
  place(1);
  std::sort(out.begin(), out.end());
  return out;
}

ComplexMatrix permutation_operator(const std::vector<int>& perm, int d) {
  const auto image = permuted_indices(perm, d);
  ComplexMatrix p(image.size(), image.size());
  for (std::size_t idx = 0; idx < image.size(); ++idx) p(image[idx], idx) = 1.0;
  return p;
}

ComplexMatrix young_projector(const YoungDiagram& diagram, const YoungTableau& tableau, int d) {
  if (!is_standard(diagram, tableau)) {
    throw std::invalid_argument("young_projector: tableau is not a standard filling of the diagram");
  }
  const int t = diagram.boxes();
  const std::size_t n = ipow(static_cast<std::size_t>(d), t);

  ComplexMatrix row_sym(n, n);
  for (const auto& perm : group_permutations(tableau_rows_as_positions(tableau), t)) {
    const auto image = permuted_indices(perm, d);
    for (std::size_t idx = 0; idx < n; ++idx) row_sym(image[idx], idx) += 1.0;
  }
  ComplexMatrix col_antisym(n, n);
  for (const auto& perm : group_permutations(tableau_columns_as_positions(tableau), t)) {
    const auto image = permuted_indices(perm, d);
    const double sign = permutation_sign(perm);
    for (std::size_t idx = 0; idx < n; ++idx) col_antisym(image[idx], idx) += sign;
  }
  return row_sym * col_antisym;
}

ComplexMatrix SchurSector::projector() const { return projector_onto(vectors); }

std::size_t SchurBasis::dimension() const { return ipow(static_cast<std::size_t>(d), t); }

ComplexMatrix SchurBasis::transform() const {
  const std::size_t n = dimension();
  ComplexMatrix q(n, n);
  std::size_t col = 0;
  for (const auto& sector : sectors) {
    for (const auto& v : sector.vectors) {
      if (col >= n) throw DimensionError("SchurBasis::transform: too many basis vectors");
      for (std::size_t r = 0; r < n; ++r) q(r, col) = v(r, 0);
      ++col;
    }
  }
  if (col != n) throw DimensionError("SchurBasis::transform: basis vector count differs from d^t");
  return q;
}

bool schur_envelope_contains(int d, int t) { return d == 2 && t >= 1 && t <= 6; }

std::vector<ComplexMatrix> schur_seed_vectors(const YoungDiagram& diagram, int d,
                                              const TolerancePolicy& policy) {
  if (d != 2) throw UnsupportedError("schur_seed_vectors: only qubit registers (d = 2) are supported");
  if (diagram.depth() > d) throw std::invalid_argument("schur_seed_vectors: diagram has more than d rows");
  const int t = diagram.boxes();
  const auto tableaux = standard_tableaux(diagram);
  const std::size_t dim_irrep = static_cast<std::size_t>(diagram.rows[0] -
                                                         (diagram.depth() > 1 ? diagram.rows[1] : 0) + 1);
  const std::size_t multiplicity = tableaux.size();

  std::vector<ComplexMatrix> seeds(dim_irrep * multiplicity);
  for (std::size_t lambda = 0; lambda < multiplicity; ++lambda) {
    const auto& tableau = tableaux[lambda];
    // Highest-weight ket: every box of row r carries the digit r.
    std::vector<int> digits(static_cast<std::size_t>(t));
    for (std::size_t r = 0; r < tableau.size(); ++r) {
      for (int entry : tableau[r]) digits[static_cast<std::size_t>(entry - 1)] = static_cast<int>(r);
    }
    const std::size_t n = ipow(static_cast<std::size_t>(d), t);
    ComplexMatrix v = young_projector(diagram, tableau, d) *
                      ComplexMatrix::basis_vector(n, index_of(digits, d));
    double norm = frob_norm(v);
    if (norm < policy.rank_tol) {
      throw std::runtime_error("schur_seed_vectors: Young symmetrizer annihilated the highest-weight ket");
    }
    v *= std::conj(leading_phase(v, policy.eq_tol)) / norm;
    for (std::size_t m = 0; m < dim_irrep; ++m) {
      if (m > 0) {
        v = lower(v, t);
        norm = frob_norm(v);
        if (norm < policy.rank_tol) throw std::runtime_error("schur_seed_vectors: lowering chain ended early");
        v *= 1.0 / norm;
      }
      seeds[m * multiplicity + lambda] = v;
    }
  }
  return seeds;
}

SchurBasis build_schur_basis(int d, int t, const TolerancePolicy& policy) {
  if (!schur_envelope_contains(d, t)) {
    throw UnsupportedError("build_schur_basis: unsupported (d, t) = (" + std::to_string(d) + ", " +
                           std::to_string(t) + "); supported envelope is d = 2, 1 <= t <= 6");
  }
  SchurBasis basis{d, t, {}};
  for (const auto& diagram : enumerate_diagrams(t, d)) {
    const auto seeds = schur_seed_vectors(diagram, d, policy);
    SchurSector sector;
    sector.diagram = diagram;
    sector.multiplicity = count_standard_tableaux(diagram);
    sector.dim_irrep = seeds.size() / sector.multiplicity;
    sector.vectors.resize(seeds.size());

    for (std::size_t m = 0; m < sector.dim_irrep; ++m) {
      std::vector<ComplexMatrix> column(seeds.begin() + static_cast<std::ptrdiff_t>(m * sector.multiplicity),
                                        seeds.begin() + static_cast<std::ptrdiff_t>((m + 1) * sector.multiplicity));
      auto ortho = gram_schmidt(column, policy);
      for (std::size_t lambda = 0; lambda < sector.multiplicity; ++lambda) {
        sector.vectors[m * sector.multiplicity + lambda] = std::move(ortho[lambda]);
      }
    }
    // Rephase whole rows so the highest-weight vector leads with a positive
    // amplitude; a per-vector rule would break the alignment between rows.
    for (std::size_t lambda = 0; lambda < sector.multiplicity; ++lambda) {
      const Complex phase = std::conj(leading_phase(sector.vector(0, lambda), policy.eq_tol));
      if (phase == Complex(1.0)) continue;
      for (std::size_t m = 0; m < sector.dim_irrep; ++m) {
        sector.vectors[m * sector.multiplicity + lambda] *= phase;
      }
    }
    basis.sectors.push_back(std::move(sector));
  }
  return basis;
}

namespace {

struct Term {
  double coeff;
  std::string_view ket;
};

ComplexMatrix ket_combination(std::initializer_list<Term> terms, double scale) {
  ComplexMatrix v(16, 1);
  for (const auto& term : terms) {
    std::size_t idx = 0;
    for (char c : term.ket) idx = idx * 2 + static_cast<std::size_t>(c - '0');
    v(idx, 0) += term.coeff * scale;
  }
  return v;
}

}  // namespace

SchurBasis reference_basis_t4() {
  const double half = 0.5;
  const double inv_sqrt6 = 1.0 / std::sqrt(6.0);
  const double inv_sqrt12 = 1.0 / std::sqrt(12.0);

  SchurSector symmetric;
  symmetric.diagram = YoungDiagram{{4}};
  symmetric.dim_irrep = 5;
  symmetric.multiplicity = 1;
  symmetric.vectors = {
      ket_combination({{1, "0000"}}, 1.0),
      ket_combination({{1, "1000"}, {1, "0100"}, {1, "0010"}, {1, "0001"}}, half),
      ket_combination({{1, "1100"}, {1, "1010"}, {1, "1001"}, {1, "0110"}, {1, "0101"}, {1, "0011"}},
                      inv_sqrt6),
      ket_combination({{1, "1110"}, {1, "1101"}, {1, "1011"}, {1, "0111"}}, half),
      ket_combination({{1, "1111"}}, 1.0),
  };

  // e_{2,m,λ}, grouped by column m.
  const std::vector<std::vector<ComplexMatrix>> spin_one = {
      {ket_combination({{2, "0001"}, {-1, "1000"}, {-1, "0010"}}, inv_sqrt6),
       ket_combination({{2, "0010"}, {-1, "1000"}, {-1, "0001"}}, inv_sqrt6),
       ket_combination({{2, "0100"}, {-1, "1000"}, {-1, "0001"}}, inv_sqrt6)},
      {ket_combination({{2, "1110"}, {-1, "0111"}, {-1, "1101"}}, inv_sqrt6),
       ket_combination({{2, "1101"}, {-1, "0111"}, {-1, "1110"}}, inv_sqrt6),
       ket_combination({{2, "1011"}, {-1, "0111"}, {-1, "1110"}}, inv_sqrt6)},
      {ket_combination({{2, "0101"}, {-2, "1010"}, {1, "0011"}, {-1, "1100"}, {1, "1001"}, {-1, "0110"}},
                       inv_sqrt12),
       ket_combination({{2, "0110"}, {-2, "1001"}, {1, "0011"}, {-1, "1100"}, {1, "1010"}, {-1, "0101"}},
                       inv_sqrt12),
       ket_combination({{2, "0110"}, {-2, "1001"}, {1, "0101"}, {-1, "1010"}, {1, "1100"}, {-1, "0011"}},
                       inv_sqrt12)},
  };
  SchurSector triplets;
  triplets.diagram = YoungDiagram{{3, 1}};
  triplets.dim_irrep = 3;
  triplets.multiplicity = 3;
  for (const auto& column : spin_one) {
    for (auto& v : gram_schmidt(column)) triplets.vectors.push_back(std::move(v));
  }

  const std::vector<ComplexMatrix> spin_zero = {
      ket_combination({{1, "1100"}, {1, "0011"}, {-1, "1001"}, {-1, "0110"}}, half),
      ket_combination({{1, "1010"}, {1, "0101"}, {-1, "1001"}, {-1, "0110"}}, half),
  };
  SchurSector singlets;
  singlets.diagram = YoungDiagram{{2, 2}};
  singlets.dim_irrep = 1;
  singlets.multiplicity = 2;
  singlets.vectors = gram_schmidt(spin_zero);

  SchurBasis basis{2, 4, {}};
  basis.sectors.push_back(std::move(symmetric));
  basis.sectors.push_back(std::move(triplets));
  basis.sectors.push_back(std::move(singlets));
  return basis;
}

}  // namespace ufavg
