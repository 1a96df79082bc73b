// Finite-length graded modules over S(Q) = k[x0..x3]/(x0x3 - x1x2).
#pragma once

#include <array>
#include <map>
#include <set>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "horrocks/presheaf.hpp"

namespace horrocks {

/// Pieces M_d for d in [lo, hi] with operators x_k: M_d -> M_{d+1}.
template <class K>
struct FinLengthModule {
  int lo = 0, hi = -1;
  std::vector<std::size_t> dims;                    // dims[d - lo]
  std::array<std::vector<Matrix<K>>, 4> ops;        // ops[k][d - lo]: dim(d+1) x dim(d)

  static FinLengthModule zero() { return {}; }

  std::size_t dim(int d) const { return d < lo || d > hi ? 0 : dims[static_cast<std::size_t>(d - lo)]; }
  bool is_zero() const {
    for (std::size_t n : dims)
      if (n) return false;
    return true;
  }
  std::size_t total_dim() const {
    std::size_t t = 0;
    for (std::size_t n : dims) t += n;
    return t;
  }
  Matrix<K> op(int k, int d) const {
    if (d < lo || d > hi) return Matrix<K>(dim(d + 1), dim(d));
    return ops[static_cast<std::size_t>(k)][static_cast<std::size_t>(d - lo)];
  }

  /// Allocate zero operators for the given dims.
  static FinLengthModule with_dims(int lo, std::vector<std::size_t> dims) {
    FinLengthModule m;
    m.lo = lo;
    m.hi = lo + static_cast<int>(dims.size()) - 1;
    m.dims = std::move(dims);
    for (int k = 0; k < 4; ++k)
      for (int d = m.lo; d <= m.hi; ++d) m.ops[static_cast<std::size_t>(k)].push_back(Matrix<K>(m.dim(d + 1), m.dim(d)));
    return m;
  }
  void set_op(int k, int d, Matrix<K> m) {
    if (m.rows() != dim(d + 1) || m.cols() != dim(d))
      throw Error(ErrorKind::Validation, "operator x" + std::to_string(k) + " in degree " + std::to_string(d) +
                                             " has the wrong shape");
    ops[static_cast<std::size_t>(k)][static_cast<std::size_t>(d - lo)] = std::move(m);
  }
};

/// Empty when the operators commute pairwise and satisfy x0x3 = x1x2.
template <class K>
std::vector<std::string> validate(const FinLengthModule<K>& M) {
  std::vector<std::string> problems;
  if (M.dims.size() != static_cast<std::size_t>(M.hi - M.lo + 1)) problems.push_back("dims do not match the degree range");
  for (int k = 0; k < 4; ++k)
    for (int d = M.lo; d <= M.hi; ++d) {
      const Matrix<K> m = M.op(k, d);
      if (m.rows() != M.dim(d + 1) || m.cols() != M.dim(d))
        problems.push_back("x" + std::to_string(k) + " in degree " + std::to_string(d) + " has the wrong shape");
    }
  if (!problems.empty()) return problems;
  for (int d = M.lo; d <= M.hi; ++d) {
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (!(M.op(j, d + 1) * M.op(i, d) == M.op(i, d + 1) * M.op(j, d)))
          problems.push_back("x" + std::to_string(i) + " and x" + std::to_string(j) + " do not commute in degree " +
                             std::to_string(d));
    if (!(M.op(3, d + 1) * M.op(0, d) == M.op(2, d + 1) * M.op(1, d)))
      problems.push_back("x0x3 != x1x2 in degree " + std::to_string(d));
  }
  return problems;
}

template <class K>
void require_valid(const FinLengthModule<K>& M) {
  const auto p = validate(M);
  if (!p.empty()) throw Error(ErrorKind::Validation, "invalid module: " + p.front());
}

/// Images of v in M_d under all monomials of S(Q)_n, in monomial_basis order.
template <class K>
std::vector<Vec<K>> monomial_images(const FinLengthModule<K>& M, int d, const Vec<K>& v, int n) {
  std::vector<std::vector<Vec<K>>> layers{{v}};
  for (int m = 1; m <= n; ++m) {
    std::vector<Vec<K>> cur;
    for (const Monomial& mo : monomial_basis({m, m})) {
      int k;
      Monomial pred = mo;
      if (mo.i >= 1 && mo.j >= 1) {
        k = 0;
        pred = {mo.i - 1, mo.j - 1};
      } else if (mo.i >= 1) {
        k = 1;
        pred = {mo.i - 1, mo.j};
      } else if (mo.j >= 1) {
        k = 2;
        pred = {mo.i, mo.j - 1};
      } else {
        k = 3;
      }
      const Vec<K>& p = layers[static_cast<std::size_t>(m - 1)][monomial_index({m - 1, m - 1}, pred.i, pred.j)];
      cur.push_back(M.op(k, d + m - 1) * p);
    }
    layers.push_back(std::move(cur));
  }
  return layers[static_cast<std::size_t>(n)];
}

struct Generator {
  int degree;
  std::size_t index;  // coordinate of the generator inside M_degree
  friend bool operator==(const Generator&, const Generator&) = default;
};

/// Generators in degree d are the unit vectors complementary to the image of
/// S(Q)_1 * M_{d-1}.
template <class K>
std::vector<Generator> minimal_generators(const FinLengthModule<K>& M, const typename K::Field& f) {
  std::vector<Generator> gens;
  for (int d = M.lo; d <= M.hi; ++d) {
    std::vector<Vec<K>> img;
    for (int k = 0; k < 4; ++k)
      for (const Vec<K>& c : M.op(k, d - 1).columns()) img.push_back(c);
    const QuotientData<K> q = quotient_data(M.dim(d), img, f);
    for (std::size_t c : q.coset) gens.push_back({d, c});
  }
  return gens;
}

template <class K>
struct MinimalPresentation {
  std::vector<Generator> gens;
  KerPresentation<K> F;  // psi: L1 -> L0

  const SplitBundle& L1() const { return F.A(); }
  const SplitBundle& L0() const { return F.B(); }
  const FormMatrix<K>& psi() const { return F.g; }
};

/// Evaluation H^0(L0(e,e)) -> M_e sending a monomial times generator to its image.
template <class K>
Matrix<K> evaluation_matrix(const FinLengthModule<K>& M, const std::vector<Generator>& gens, int e,
                            const typename K::Field& f) {
  std::vector<Vec<K>> cols;
  for (const Generator& g : gens) {
    const int n = e - g.degree;
    if (n < 0) continue;
    for (auto& v : monomial_images(M, g.degree, unit_vector<K>(M.dim(g.degree), g.index, f), n)) cols.push_back(v);
  }
  return Matrix<K>::from_columns(M.dim(e), cols);
}

namespace detail {

template <class K>
SplitBundle generator_bundle(const std::vector<Generator>& gens) {
  std::vector<Twist> ts;
  for (const Generator& g : gens) ts.push_back(O(-g.degree));
  return SplitBundle(ts);
}

template <class K>
bool presentation_matches(const FinLengthModule<K>& M, const std::vector<Generator>& gens, const FormMatrix<K>& psi,
                          int e, const typename K::Field& f) {
  const Matrix<K> ev = evaluation_matrix(M, gens, e, f);
  const Matrix<K> ps = induced_h(psi, 0, O(e));
  if (!(ev * ps).is_zero()) return false;
  const std::size_t rk = rank(ev);
  return rk == M.dim(e) && rank(ps) + rk == ev.cols();
}

}  // namespace detail

/// Relations are generated degreewise up to a bound, then the cokernel of
/// H^0_*(psi) is compared with M; on mismatch the bound grows by two, twice.
template <class K>
MinimalPresentation<K> minimal_presentation(const FinLengthModule<K>& M, const typename K::Field& f) {
  require_valid(M);
  MinimalPresentation<K> mp;
  mp.gens = minimal_generators(M, f);
  const SplitBundle L0 = detail::generator_bundle<K>(mp.gens);
  if (mp.gens.empty()) {
    mp.F = {FormMatrix<K>(SplitBundle{}, SplitBundle{})};
    return mp;
  }
  const int first = mp.gens.front().degree;
  int bound = M.hi + 3;
  for (int attempt = 0; attempt < 3; ++attempt, bound += 2) {
    std::vector<Twist> rel_twists;
    std::vector<Vec<K>> rel_sections;
    std::vector<Vec<K>> prev_kernel;
    for (int e = first; e <= bound; ++e) {
      const Matrix<K> ev = evaluation_matrix(M, mp.gens, e, f);
      const std::vector<Vec<K>> ker = kernel_basis(ev, f);
      std::vector<Vec<K>> known;
      for (int k = 0; k < 4; ++k) {
        const Matrix<K> act = scalar_action(L0, BiForm<K>::x(k, f), 0, O(e - 1));
        for (const Vec<K>& r : prev_kernel) known.push_back(act * r);
      }
      const QuotientData<K> q = quotient_data(ev.cols(), known, f);
      std::vector<Vec<K>> proj;
      for (const Vec<K>& r : ker) proj.push_back(q.project(r));
      if (!proj.empty()) {
        const Echelon<K> ech = rref(Matrix<K>::from_columns(q.dim(), proj));
        for (std::size_t p : ech.pivots) {
          rel_twists.push_back(O(-e));
          rel_sections.push_back(ker[p]);
        }
      }
      prev_kernel = ker;
    }
    FormMatrix<K> psi(SplitBundle(rel_twists), L0);
    for (std::size_t j = 0; j < rel_sections.size(); ++j) set_column_section(psi, j, rel_sections[j]);
    bool ok = true;
    for (int e = first - 1; e <= bound + 2 && ok; ++e) ok = detail::presentation_matches(M, mp.gens, psi, e, f);
    if (ok) {
      mp.F = {psi};
      return mp;
    }
  }
  throw Error(ErrorKind::BoundExceeded, "relations of the module did not stabilize");
}

// ---------------------------------------------------------------------------
// Modules of bundles

/// Diagonal degrees where H^1(E(d,d)) may be nonzero, with both ends checked
/// to vanish over two extra degrees.
template <class DimFn>
std::pair<int, int> detect_support(int lo, int hi, DimFn&& h1) {
  for (int attempt = 0; attempt < 4; ++attempt, lo -= 3, hi += 3) {
    std::vector<long> v;
    for (int d = lo; d <= hi; ++d) v.push_back(h1(d));
    const std::size_t n = v.size();
    if (n >= 4 && v[0] == 0 && v[1] == 0 && v[n - 1] == 0 && v[n - 2] == 0) {
      int a = hi + 1, b = lo - 1;
      for (int d = lo; d <= hi; ++d)
        if (v[static_cast<std::size_t>(d - lo)] != 0) {
          a = std::min(a, d);
          b = std::max(b, d);
        }
      return {a, b};
    }
  }
  throw Error(ErrorKind::BoundExceeded, "H^1 on the diagonal does not vanish at the ends of the window");
}

/// Module whose piece in degree d is the coker model of P at (d,d).
template <class K>
FinLengthModule<K> module_from_coker(const KerPresentation<K>& P, int lo, int hi, const typename K::Field& f) {
  if (lo > hi) return FinLengthModule<K>::zero();
  std::vector<CokerModel<K>> models;
  std::vector<std::size_t> dims;
  for (int d = lo; d <= hi + 1; ++d) models.push_back(coker_model(P, O(d), f));
  for (int d = lo; d <= hi; ++d) dims.push_back(models[static_cast<std::size_t>(d - lo)].dim());
  auto M = FinLengthModule<K>::with_dims(lo, dims);
  for (int k = 0; k < 4; ++k)
    for (int d = lo; d <= hi; ++d) {
      Matrix<K> m = mult_cokermodel(P, BiForm<K>::x(k, f), models[static_cast<std::size_t>(d - lo)],
                                    models[static_cast<std::size_t>(d - lo + 1)], f);
      if (d == hi) m = Matrix<K>(0, m.cols());
      M.set_op(k, d, m);
    }
  return M;
}

template <class K>
FinLengthModule<K> module_from_bundle(const KerPresentation<K>& P, const typename K::Field& f) {
  if (!P.A().all_acm()) throw Error(ErrorKind::Unsupported, "module_from_bundle needs an ACM middle term");
  const auto [wl, wh] = default_window(P);
  const auto [lo, hi] = detect_support(wl, wh, [&](int d) { return cohomology_dims(P, O(d))[1]; });
  return module_from_coker(P, lo, hi, f);
}

/// For a monad with ACM terms, H^1(E(d,d)) is the coker model of the middle
/// presentation as long as H^2(L(d,d)) -> H^2(ker psi) is injective.
template <class K>
FinLengthModule<K> module_from_bundle(const MonadPresentation<K>& Mo, const typename K::Field& f) {
  validate_monad(Mo);
  if (!Mo.L().all_acm() || !Mo.A().all_acm())
    throw Error(ErrorKind::Unsupported, "module_from_bundle needs ACM monad terms");
  const KerPresentation<K> mid = Mo.middle();
  auto [wl, wh] = default_window(mid);
  for (const Twist& t : Mo.L().summands) {
    wl = std::min({wl, -std::abs(t.a) - 3, -std::abs(t.b) - 3});
    wh = std::max({wh, std::abs(t.a) + 3, std::abs(t.b) + 3});
  }
  auto h1 = [&](int d) {
    const BiDegree e = O(d);
    if (static_cast<long>(rank(induced_h(Mo.kappa, 2, e))) != split_dim(2, Mo.L(), e))
      throw Error(ErrorKind::Unsupported, "H^2 of the left monad term does not inject in degree " + std::to_string(d));
    return cohomology_dims(mid, e)[1];
  };
  const auto [lo, hi] = detect_support(wl, wh, h1);
  for (int d = lo; d <= hi; ++d) (void)h1(d);
  return module_from_coker(mid, lo, hi, f);
}

// ---------------------------------------------------------------------------
// The modules M_{Sigma_i}

enum class Family { M00 = 0, M10 = 1, M01 = 2 };

inline BiDegree family_shift(Family fam, int d) { return strip_shift(static_cast<int>(fam), d); }

/// M00_d, M10_d, M01_d as coker models of F = ker psi, with cross operators
/// computed on demand.
template <class K>
struct TriDiagModule {
  MinimalPresentation<K> pres;
  int lo = 0, hi = -1;  // degrees where some family may be nonzero
  std::array<std::map<int, CokerModel<K>>, 3> models;

  std::size_t dim(Family fam, int d) const {
    const auto& m = models[static_cast<int>(fam)];
    auto it = m.find(d);
    return it == m.end() ? 0 : it->second.dim();
  }
  const CokerModel<K>* model(Family fam, int d) const {
    const auto& m = models[static_cast<int>(fam)];
    auto it = m.find(d);
    return it == m.end() ? nullptr : &it->second;
  }

  /// Multiplication by a form: s,t from M00_d to M10_d or M01_d to M00_{d+1};
  /// u,v from M00_d to M01_d or M10_d to M00_{d+1}.
  Matrix<K> map(Family from, int d, const BiForm<K>& form, const typename K::Field& f) const {
    const BiDegree src = family_shift(from, d);
    const BiDegree dst = src + form.degree();
    Family to;
    int dd;
    if (dst.a == dst.b) {
      to = Family::M00;
      dd = dst.a;
    } else if (dst.a == dst.b + 1) {
      to = Family::M10;
      dd = dst.b;
    } else if (dst.b == dst.a + 1) {
      to = Family::M01;
      dd = dst.a;
    } else {
      throw Error(ErrorKind::Internal, "form does not map between the three families");
    }
    const CokerModel<K>* a = model(from, d);
    const CokerModel<K>* b = model(to, dd);
    if (!a || !b) return Matrix<K>(b ? b->dim() : 0, a ? a->dim() : 0);
    return mult_cokermodel(pres.F, form, *a, *b, f);
  }
};

template <class K>
TriDiagModule<K> sigma_modules(const MinimalPresentation<K>& mp, int mlo, int mhi, const typename K::Field& f) {
  TriDiagModule<K> T;
  T.pres = mp;
  if (mp.gens.empty()) return T;
  T.lo = mlo - 3;
  T.hi = mhi + 2;
  for (int fam = 0; fam < 3; ++fam)
    for (int d = T.lo; d <= T.hi; ++d) {
      CokerModel<K> cm = coker_model(mp.F, family_shift(static_cast<Family>(fam), d), f);
      if (cm.dim() > 0) T.models[fam].emplace(d, std::move(cm));
    }
  return T;
}

template <class K>
TriDiagModule<K> sigma_modules(const FinLengthModule<K>& M, const typename K::Field& f) {
  return sigma_modules(minimal_presentation(M, f), M.lo, M.hi, f);
}

/// Map M00_d -> M_d: lift to a section of L0(d,d) and evaluate.
template <class K>
Matrix<K> m00_to_module(const TriDiagModule<K>& T, const FinLengthModule<K>& M, int d, const typename K::Field& f) {
  const CokerModel<K>* cm = T.model(Family::M00, d);
  if (!cm) return Matrix<K>(M.dim(d), 0);
  const Matrix<K> ev = evaluation_matrix(M, T.pres.gens, d, f);
  std::vector<Vec<K>> cols;
  for (std::size_t c = 0; c < cm->dim(); ++c) cols.push_back(ev * cm->q.lift(unit_vector<K>(cm->dim(), c, f)));
  return Matrix<K>::from_columns(M.dim(d), cols);
}

/// Per-degree lists of coordinate vectors in one family.
template <class K>
struct GradedSubspace {
  Family family = Family::M10;
  std::map<int, std::vector<Vec<K>>> pieces;

  std::size_t dim(int d) const {
    auto it = pieces.find(d);
    return it == pieces.end() ? 0 : span_rank(it->second.empty() ? 0 : it->second[0].size(), it->second);
  }
  std::size_t total_dim() const {
    std::size_t t = 0;
    for (const auto& [d, v] : pieces) t += dim(d);
    return t;
  }
  const std::vector<Vec<K>>& piece(int d) const {
    static const std::vector<Vec<K>> empty;
    auto it = pieces.find(d);
    return it == pieces.end() ? empty : it->second;
  }
  /// Drop empty degrees and replace each piece by an echelon basis.
  void normalize(const TriDiagModule<K>& T) {
    std::map<int, std::vector<Vec<K>>> out;
    for (const auto& [d, vs] : pieces) {
      const std::size_t n = T.dim(family, d);
      if (vs.empty()) continue;
      for (const Vec<K>& v : vs)
        if (v.size() != n) throw Error(ErrorKind::Validation, "subspace vector of wrong length in degree " + std::to_string(d));
      const Echelon<K> e = rref(Matrix<K>::from_rows(n, vs));
      std::vector<Vec<K>> basis;
      for (std::size_t r = 0; r < e.rank(); ++r) basis.push_back(e.r.row(r));
      if (!basis.empty()) out.emplace(d, std::move(basis));
    }
    pieces = std::move(out);
  }
};

template <class K>
bool same_subspace(const GradedSubspace<K>& a, const GradedSubspace<K>& b) {
  std::set<int> degs;
  for (const auto& [d, v] : a.pieces) degs.insert(d);
  for (const auto& [d, v] : b.pieces) degs.insert(d);
  for (int d : degs) {
    const auto& x = a.piece(d);
    const auto& y = b.piece(d);
    const std::size_t n = !x.empty() ? x[0].size() : !y.empty() ? y[0].size() : 0;
    std::vector<Vec<K>> both = x;
    both.insert(both.end(), y.begin(), y.end());
    const std::size_t r = span_rank(n, both);
    if (r != span_rank(n, x) || r != span_rank(n, y)) return false;
  }
  return true;
}

/// Socle operators: u,v on M10 (family of W) and s,t on M01 (family of V).
template <class K>
Matrix<K> socle_operator(const TriDiagModule<K>& T, Family fam, int d, const typename K::Field& f) {
  const bool w = fam == Family::M10;
  const BiForm<K> x = w ? BiForm<K>::u(f) : BiForm<K>::s(f);
  const BiForm<K> y = w ? BiForm<K>::v(f) : BiForm<K>::t(f);
  return Matrix<K>::vstack(T.map(fam, d, x, f), T.map(fam, d, y, f));
}

template <class K>
GradedSubspace<K> socle_subspace(const TriDiagModule<K>& T, Family fam, const typename K::Field& f) {
  GradedSubspace<K> s;
  s.family = fam;
  for (const auto& [d, cm] : T.models[static_cast<int>(fam)]) {
    auto ker = kernel_basis(socle_operator(T, fam, d, f), f);
    if (!ker.empty()) s.pieces.emplace(d, std::move(ker));
  }
  s.normalize(T);
  return s;
}

template <class K>
bool in_socle(const TriDiagModule<K>& T, const GradedSubspace<K>& S, const typename K::Field& f) {
  for (const auto& [d, vs] : S.pieces) {
    const Matrix<K> op = socle_operator(T, S.family, d, f);
    for (const Vec<K>& v : vs)
      if (v.size() != T.dim(S.family, d) || !is_zero_vec(op * v)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Module maps

/// Degree-0 map: one matrix per degree of the common range.
template <class K>
struct ModuleMap {
  int lo = 0, hi = -1;
  std::vector<Matrix<K>> pieces;
  const Matrix<K>& at(int d) const { return pieces[static_cast<std::size_t>(d - lo)]; }
};

/// Basis of the degree-0 homomorphisms M -> N commuting with x0..x3.
template <class K>
std::vector<ModuleMap<K>> hom_space(const FinLengthModule<K>& M, const FinLengthModule<K>& N, const typename K::Field& f) {
  const int lo = std::min(M.lo, N.lo), hi = std::max(M.hi, N.hi);
  std::vector<std::size_t> off{0};
  for (int d = lo; d <= hi; ++d) off.push_back(off.back() + N.dim(d) * M.dim(d));
  const std::size_t nvar = off.back();
  // unknown (d, r, c) at off[d-lo] + r * M.dim(d) + c
  std::vector<Vec<K>> eqs;
  for (int k = 0; k < 4; ++k)
    for (int d = lo; d <= hi; ++d) {
      // phi_{d+1} x^M_d - x^N_d phi_d = 0
      const Matrix<K> xm = M.op(k, d), xn = N.op(k, d);
      const std::size_t rows = N.dim(d + 1), cols = M.dim(d);
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
          Vec<K> eq(nvar, f.zero());
          if (d + 1 <= hi)
            for (std::size_t m = 0; m < M.dim(d + 1); ++m)
              eq[off[static_cast<std::size_t>(d + 1 - lo)] + r * M.dim(d + 1) + m] += xm(m, c);
          for (std::size_t m = 0; m < N.dim(d); ++m)
            eq[off[static_cast<std::size_t>(d - lo)] + m * M.dim(d) + c] -= xn(r, m);
          eqs.push_back(std::move(eq));
        }
    }
  const Matrix<K> sys = eqs.empty() ? Matrix<K>(0, nvar) : Matrix<K>::from_rows(nvar, eqs);
  std::vector<ModuleMap<K>> out;
  for (const Vec<K>& sol : kernel_basis(sys, f)) {
    ModuleMap<K> phi;
    phi.lo = lo;
    phi.hi = hi;
    for (int d = lo; d <= hi; ++d) {
      Matrix<K> m(N.dim(d), M.dim(d));
      for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = sol[off[static_cast<std::size_t>(d - lo)] + r * m.cols() + c];
      phi.pieces.push_back(m);
    }
    out.push_back(std::move(phi));
  }
  return out;
}

template <class K>
ModuleMap<K> combine(const std::vector<ModuleMap<K>>& basis, const Vec<K>& coeffs, int lo, int hi,
                     const FinLengthModule<K>& M, const FinLengthModule<K>& N) {
  ModuleMap<K> phi;
  phi.lo = lo;
  phi.hi = hi;
  for (int d = lo; d <= hi; ++d) phi.pieces.push_back(Matrix<K>(N.dim(d), M.dim(d)));
  for (std::size_t b = 0; b < basis.size(); ++b)
    for (int d = lo; d <= hi; ++d)
      phi.pieces[static_cast<std::size_t>(d - lo)] =
          phi.pieces[static_cast<std::size_t>(d - lo)] + coeffs[b] * basis[b].at(d);
  return phi;
}

template <class K>
bool is_invertible(const ModuleMap<K>& phi) {
  for (const Matrix<K>& m : phi.pieces)
    if (m.rows() != m.cols() || rank(m) != m.rows()) return false;
  return true;
}

template <class K>
bool same_dims(const FinLengthModule<K>& M, const FinLengthModule<K>& N) {
  for (int d = std::min(M.lo, N.lo); d <= std::max(M.hi, N.hi); ++d)
    if (M.dim(d) != N.dim(d)) return false;
  return true;
}

/// Random search for an isomorphism in the space of module maps.
template <class K>
std::optional<ModuleMap<K>> module_iso(const FinLengthModule<K>& M, const FinLengthModule<K>& N,
                                       const typename K::Field& f, std::mt19937_64& rng, int trials = 200) {
  if (!same_dims(M, N)) return std::nullopt;
  const int lo = std::min(M.lo, N.lo), hi = std::max(M.hi, N.hi);
  const auto basis = hom_space(M, N, f);
  for (int t = 0; t < trials; ++t) {
    const ModuleMap<K> phi = combine(basis, random_vector<K>(basis.size(), f, rng), lo, hi, M, N);
    if (is_invertible(phi)) return phi;
  }
  return std::nullopt;
}

}  // namespace horrocks
