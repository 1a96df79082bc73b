// Section-vanishing stability and jumping-line determinants for rank-2
// gamma-form bundles.
#pragma once

#include <string>
#include <type_traits>
#include <vector>

#include "horrocks/presheaf.hpp"

namespace horrocks {

struct BinaryRoot {
  std::string point;  // "[a:b]"
  int multiplicity;
};

template <class K>
struct JumpingDeterminant {
  BiForm<K> det;
  bool roots_known = false;  // roots are enumerated over prime fields only
  std::vector<BinaryRoot> roots;
  bool is_zero() const { return det.is_zero(); }
  bool repeated_root() const {
    for (const auto& r : roots)
      if (r.multiplicity > 1) return true;
    return false;
  }
};

template <class K>
struct StabilityReport {
  long h0 = 0, h0_1m1 = 0, h0_m11 = 0;  // h^0 of E, E(1,-1), E(-1,1)
  bool stable = false;
};

template <class K>
StabilityReport<K> le_potier_check(const KerPresentation<K>& P) {
  if (P.rank() != 2) throw Error(ErrorKind::Precondition, "le Potier check needs a rank-2 bundle");
  if (!(P.A().c1() - P.B().c1() == BiDegree{0, 0})) throw Error(ErrorKind::Precondition, "le Potier check needs c1 = 0");
  StabilityReport<K> r;
  r.h0 = cohomology_dims(P, {0, 0})[0];
  r.h0_1m1 = cohomology_dims(P, {1, -1})[0];
  r.h0_m11 = cohomology_dims(P, {-1, 1})[0];
  r.stable = r.h0 == 0 && r.h0_1m1 == 0 && r.h0_m11 == 0;
  return r;
}

/// Determinant by cofactor expansion along the first row.
template <class K>
BiForm<K> form_determinant(const std::vector<std::vector<BiForm<K>>>& m, BiDegree total, const typename K::Field& f) {
  const std::size_t n = m.size();
  if (n == 0) return BiForm<K>::constant(f.one());
  if (n == 1) return m[0][0];
  BiForm<K> acc(total);
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    std::vector<std::vector<BiForm<K>>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<BiForm<K>> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[i][c]);
      minor.push_back(row);
    }
    const BiForm<K> term = m[0][j] * form_determinant(minor, total - m[0][j].degree(), f);
    acc = j % 2 == 0 ? acc + term : acc - term;
  }
  return acc;
}

namespace detail {

/// Coefficients c_i of x^i y^(n-i) for a form of degree (n,0) or (0,n).
template <class K>
std::vector<K> binary_coeffs(const BiForm<K>& g) {
  const BiDegree d = g.degree();
  const int n = d.a + d.b;
  std::vector<K> c(static_cast<std::size_t>(n + 1));
  for (int i = 0; i <= n; ++i) c[static_cast<std::size_t>(i)] = d.b == 0 ? g.coeff(i, 0) : g.coeff(0, i);
  return c;
}

/// Roots of a nonzero binary form over F_p with multiplicities.
inline std::vector<BinaryRoot> binary_roots(std::vector<Fp> c, const Fp::Field& f) {
  std::vector<BinaryRoot> out;
  const int n = static_cast<int>(c.size()) - 1;
  int top = n;
  while (top >= 0 && c[static_cast<std::size_t>(top)].is_zero()) --top;
  if (top < 0) return out;
  if (top < n) out.push_back({"[1:0]", n - top});
  c.resize(static_cast<std::size_t>(top + 1));
  // p(x) = sum c_i x^i; root x = a is the point [a:1]
  for (std::uint32_t a = 0; a < f.p && c.size() > 1; ++a) {
    const Fp x = f.make(a);
    int mult = 0;
    while (c.size() > 1) {
      // synthetic division by (x - a)
      std::vector<Fp> q(c.size() - 1);
      Fp r = c.back();
      for (std::size_t k = c.size() - 1; k-- > 0;) {
        q[k] = r;
        r = c[k] + r * x;
      }
      if (!r.is_zero()) break;
      c = q;
      ++mult;
    }
    if (mult > 0) out.push_back({"[" + std::to_string(a) + ":1]", mult});
  }
  return out;
}

}  // namespace detail

/// det g1 over the Sigma2 columns ((s,t)-forms) and det g2 over the Sigma1
/// columns ((u,v)-forms).
template <class K>
std::pair<JumpingDeterminant<K>, JumpingDeterminant<K>> jumping_determinants(const KerPresentation<K>& P,
                                                                             const typename K::Field& f) {
  if (!P.B().all_free()) throw Error(ErrorKind::Precondition, "jumping determinants need a free B");
  std::vector<std::size_t> c1, c2;
  for (std::size_t j = 0; j < P.A().rank(); ++j) {
    const Twist t = P.A()[j];
    if (t.b == t.a + 1)
      c1.push_back(j);
    else if (t.a == t.b + 1)
      c2.push_back(j);
    else
      throw Error(ErrorKind::Precondition, "A must consist of spinor twists");
  }
  auto block_det = [&](const std::vector<std::size_t>& cols, bool st) {
    if (cols.size() != P.B().rank()) throw Error(ErrorKind::Precondition, "jumping block is not square");
    std::vector<std::vector<BiForm<K>>> m;
    BiDegree total{0, 0};
    for (std::size_t i = 0; i < P.B().rank(); ++i) {
      std::vector<BiForm<K>> row;
      for (std::size_t j : cols) {
        const BiDegree d = P.g.entry_degree(i, j);
        if ((st && d.b != 0) || (!st && d.a != 0))
          throw Error(ErrorKind::Precondition, "jumping block entries are not forms on one factor");
        row.push_back(P.g(i, j));
      }
      m.push_back(row);
    }
    // degrees: entry (i,j) has degree B_i - A_j, so the determinant has degree sum B - sum A_cols
    for (std::size_t i = 0; i < P.B().rank(); ++i) total = total + P.B()[i];
    for (std::size_t j : cols) total = total - P.A()[j];
    JumpingDeterminant<K> jd{form_determinant(m, total, f)};
    if constexpr (std::is_same_v<K, Fp>) {
      if (!jd.det.is_zero()) {
        jd.roots = detail::binary_roots(detail::binary_coeffs(jd.det), f);
        jd.roots_known = true;
      }
    }
    return jd;
  };
  return {block_det(c1, true), block_det(c2, false)};
}

}  // namespace horrocks
