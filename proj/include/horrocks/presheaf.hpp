// Bundles presented by complexes of split bundles.
//
// A KerPresentation is E = ker(g: A -> B) with g sheaf-surjective. A
// MonadPresentation is L -> A -> B with E = ker(psi)/im(kappa). Every H^1
// class is represented by a section of the target bundle B (a coker model);
// connecting maps are computed by lifting through explicit Koszul
// resolutions, so no Cech cochains are needed.
#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "horrocks/bipoly.hpp"
#include "horrocks/exactla.hpp"
#include "horrocks/linecoh.hpp"

namespace horrocks {

// ---------------------------------------------------------------------------
// Sections of split bundles and columns of form matrices

/// Coefficients of column j of m, read as a section of dst(-src_j).
template <class K>
Vec<K> column_section(const FormMatrix<K>& m, std::size_t j) {
  Vec<K> v;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto& c = m(i, j).coeffs();
    v.insert(v.end(), c.begin(), c.end());
  }
  return v;
}

template <class K>
void set_column_section(FormMatrix<K>& m, std::size_t j, const Vec<K>& v) {
  std::size_t pos = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const BiDegree d = m.entry_degree(i, j);
    const std::size_t n = form_dim(d);
    if (pos + n > v.size()) throw Error(ErrorKind::Internal, "section vector too short for column");
    m.set(i, j, BiForm<K>(d, Vec<K>(v.begin() + pos, v.begin() + pos + n)));
    pos += n;
  }
  if (pos != v.size()) throw Error(ErrorKind::Internal, "section vector too long for column");
}

/// Block-diagonal action of a form on H^i of every summand of S(e).
template <class K>
Matrix<K> scalar_action(const SplitBundle& S, const BiForm<K>& f, int i, BiDegree e) {
  const auto ro = split_offsets(i, S, e + f.degree());
  const auto co = split_offsets(i, S, e);
  Matrix<K> m(static_cast<std::size_t>(ro.back()), static_cast<std::size_t>(co.back()));
  for (std::size_t k = 0; k < S.rank(); ++k)
    m.set_block(static_cast<std::size_t>(ro[k]), static_cast<std::size_t>(co[k]), coh_action(f, i, S[k] + e));
  return m;
}

/// Solve U * X = W for a form matrix X (column by column, degreewise).
template <class K>
std::optional<FormMatrix<K>> solve_form_system(const FormMatrix<K>& U, const FormMatrix<K>& W) {
  if (!(U.dst() == W.dst())) throw Error(ErrorKind::Internal, "solve_form_system: targets differ");
  FormMatrix<K> X(W.src(), U.src());
  for (std::size_t j = 0; j < W.cols(); ++j) {
    const BiDegree e = -W.src()[j];
    const Matrix<K> h = induced_h(U, 0, e);
    auto x = solve(h, column_section(W, j));
    if (!x) return std::nullopt;
    set_column_section(X, j, *x);
  }
  return X;
}

// ---------------------------------------------------------------------------
// Presentations

template <class K>
struct KerPresentation {
  FormMatrix<K> g;

  const SplitBundle& A() const { return g.src(); }
  const SplitBundle& B() const { return g.dst(); }
  long rank() const { return static_cast<long>(A().rank()) - static_cast<long>(B().rank()); }
  bool gamma_form() const { return A().all_acm() && B().all_free(); }
};

/// L -> A -> B with E = ker(psi) / im(kappa).
template <class K>
struct MonadPresentation {
  FormMatrix<K> kappa;
  FormMatrix<K> psi;

  const SplitBundle& L() const { return kappa.src(); }
  const SplitBundle& A() const { return psi.src(); }
  const SplitBundle& B() const { return psi.dst(); }
  long rank() const {
    return static_cast<long>(A().rank()) - static_cast<long>(B().rank()) - static_cast<long>(L().rank());
  }
  KerPresentation<K> middle() const { return {psi}; }
};

using CohDims = std::array<long, 3>;

/// h^i(E(e)) for E = ker g from the long exact sequence; no vanishing needed.
template <class K>
CohDims cohomology_dims(const KerPresentation<K>& P, BiDegree e) {
  std::array<long, 3> r{};
  for (int i = 0; i < 3; ++i) r[i] = static_cast<long>(rank(induced_h(P.g, i, e)));
  const long h0A = split_dim(0, P.A(), e), h1A = split_dim(1, P.A(), e), h2A = split_dim(2, P.A(), e);
  const long h0B = split_dim(0, P.B(), e), h1B = split_dim(1, P.B(), e);
  return {h0A - r[0], (h0B - r[0]) + (h1A - r[1]), (h1B - r[1]) + (h2A - r[2])};
}

/// Quotient of H^0(B(e)) by the image of H^0(g(e)); it is the image of the
/// connecting map into H^1(E(e)) whatever H^1(A(e)) is.
template <class K>
QuotientData<K> h0_image_quotient(const FormMatrix<K>& g, BiDegree e, const typename K::Field& f) {
  const Matrix<K> m = induced_h(g, 0, e);
  return quotient_data(m.rows(), m.columns(), f);
}

template <class K>
struct CokerModel {
  BiDegree e;
  QuotientData<K> q;
  std::size_t dim() const { return q.dim(); }
};

/// H^1(E(e)) as H^0(B(e)) / im H^0(g(e)); requires H^1(A(e)) = 0.
template <class K>
CokerModel<K> coker_model(const KerPresentation<K>& P, BiDegree e, const typename K::Field& f) {
  if (split_dim(1, P.A(), e) != 0)
    throw Error(ErrorKind::PrereqVanishingFailed, "H^1(A" + e.to_string() + ") does not vanish");
  return {e, h0_image_quotient(P.g, e, f)};
}

template <class K>
std::vector<Vec<K>> h0_space(const KerPresentation<K>& P, BiDegree e, const typename K::Field& f) {
  return kernel_basis(induced_h(P.g, 0, e), f);
}

/// H^2(E(e)) = ker(H^2 A -> H^2 B) plus coker(H^1 A -> H^1 B); the second part
/// is empty when H^1(B(e)) = 0.
template <class K>
struct H2Model {
  std::vector<Vec<K>> kernel_part;
  QuotientData<K> coker_part;
  std::size_t dim() const { return kernel_part.size() + coker_part.dim(); }
};

template <class K>
H2Model<K> h2_model(const KerPresentation<K>& P, BiDegree e, const typename K::Field& f) {
  const Matrix<K> h1 = induced_h(P.g, 1, e);
  return {kernel_basis(induced_h(P.g, 2, e), f), quotient_data(h1.rows(), h1.columns(), f)};
}

/// Multiplication by f between the coker models at e and e + deg f.
template <class K>
Matrix<K> mult_cokermodel(const KerPresentation<K>& P, const BiForm<K>& form, const CokerModel<K>& src,
                          const CokerModel<K>& dst, const typename K::Field& f) {
  if (dst.e != src.e + form.degree()) throw Error(ErrorKind::Internal, "mult_cokermodel: shift mismatch");
  const Matrix<K> act = scalar_action(P.B(), form, 0, src.e);
  Matrix<K> out(dst.dim(), src.dim());
  for (std::size_t c = 0; c < src.dim(); ++c) {
    const Vec<K> img = dst.q.project(act * src.q.lift(unit_vector<K>(src.dim(), c, f)));
    for (std::size_t r = 0; r < dst.dim(); ++r) out(r, c) = img[r];
  }
  return out;
}

template <class K>
Matrix<K> mult_cokermodel(const KerPresentation<K>& P, const BiForm<K>& form, BiDegree e, const typename K::Field& f) {
  return mult_cokermodel(P, form, coker_model(P, e, f), coker_model(P, e + form.degree(), f), f);
}

/// lambda: L1 -> A with g * lambda = psi, for two presentations sharing L0.
template <class K>
std::optional<FormMatrix<K>> lift_lambda(const KerPresentation<K>& psi, const KerPresentation<K>& gamma) {
  if (!(psi.B() == gamma.B())) throw Error(ErrorKind::Precondition, "lift_lambda needs a common target bundle");
  return solve_form_system(gamma.g, psi.g);
}

// ---------------------------------------------------------------------------
// Line-bundle summands

/// Basis of Hom(L, E) as columns L -> A killed by g.
template <class K>
std::vector<FormMatrix<K>> hom_line_to_ker(const KerPresentation<K>& P, Twist L, const typename K::Field& f) {
  std::vector<FormMatrix<K>> out;
  for (const Vec<K>& v : kernel_basis(induced_h(P.g, 0, -L), f)) {
    FormMatrix<K> col(SplitBundle{L}, P.A());
    set_column_section(col, 0, v);
    out.push_back(col);
  }
  return out;
}

/// Representatives of Hom(E, L) = Hom(A, L) / g^T Hom(B, L), as rows A -> L.
template <class K>
std::vector<FormMatrix<K>> hom_ker_to_line(const KerPresentation<K>& P, Twist L, const typename K::Field& f) {
  if (split_dim(1, P.B().dual(), L) != 0)
    throw Error(ErrorKind::Precondition, "Ext^1(B, " + L.to_string() + ") does not vanish");
  const FormMatrix<K> gt = P.g.transpose();
  const QuotientData<K> q = h0_image_quotient(gt, L, f);
  std::vector<FormMatrix<K>> out;
  for (std::size_t c = 0; c < q.dim(); ++c) {
    FormMatrix<K> col(SplitBundle{-L}, P.A().dual());
    set_column_section(col, 0, q.lift(unit_vector<K>(q.dim(), c, f)));
    out.push_back(col.transpose());
  }
  return out;
}

/// Entry (i,j) is the scalar pi_j * phi_i in Hom(L, L) = k.
template <class K>
Matrix<K> pairing_matrix(const std::vector<FormMatrix<K>>& phis, const std::vector<FormMatrix<K>>& pis) {
  Matrix<K> m(phis.size(), pis.size());
  for (std::size_t i = 0; i < phis.size(); ++i)
    for (std::size_t j = 0; j < pis.size(); ++j) m(i, j) = (pis[j] * phis[i])(0, 0).coeffs()[0];
  return m;
}

template <class K>
Matrix<K> summand_pairing(const KerPresentation<K>& P, Twist L, const typename K::Field& f) {
  return pairing_matrix(hom_line_to_ker(P, L, f), hom_ker_to_line(P, L, f));
}

/// Full table of h^i over the diagonal and both spinor strips, e in [lo, hi].
struct CohTable {
  int lo = 0, hi = -1;
  // rows[strip][e - lo]; strip 0: (e,e), 1: (e+1,e), 2: (e,e+1)
  std::array<std::vector<CohDims>, 3> rows;
  friend bool operator==(const CohTable&, const CohTable&) = default;
};

inline BiDegree strip_shift(int strip, int e) {
  return strip == 0 ? BiDegree{e, e} : strip == 1 ? BiDegree{e + 1, e} : BiDegree{e, e + 1};
}

template <class Fn>
CohTable make_table(int lo, int hi, Fn&& dims_at) {
  CohTable t;
  t.lo = lo;
  t.hi = hi;
  for (int s = 0; s < 3; ++s)
    for (int e = lo; e <= hi; ++e) t.rows[s].push_back(dims_at(strip_shift(s, e)));
  return t;
}

template <class K>
CohTable cohomology_table(const KerPresentation<K>& P, int lo, int hi) {
  return make_table(lo, hi, [&](BiDegree e) { return cohomology_dims(P, e); });
}

inline CohTable line_table(Twist L, int lo, int hi) {
  return make_table(lo, hi, [&](BiDegree e) {
    return CohDims{kunneth_dim(0, L + e), kunneth_dim(1, L + e), kunneth_dim(2, L + e)};
  });
}

inline CohTable add_tables(const CohTable& x, const CohTable& y) {
  CohTable r = x;
  for (int s = 0; s < 3; ++s)
    for (std::size_t k = 0; k < r.rows[s].size(); ++k)
      for (int i = 0; i < 3; ++i) r.rows[s][k][i] += y.rows[s][k][i];
  return r;
}

template <class K>
std::pair<int, int> default_window(const KerPresentation<K>& P) {
  int w = 0;
  for (const Twist& t : P.A().summands) w = std::max({w, std::abs(t.a), std::abs(t.b)});
  for (const Twist& t : P.B().summands) w = std::max({w, std::abs(t.a), std::abs(t.b)});
  return {-w - 3, w + 3};
}

/// Drop summand k of A after the automorphism that sends e_k to phi; the
/// column of g * T at k is then zero.
template <class K>
KerPresentation<K> split_off_summand(const KerPresentation<K>& P, const FormMatrix<K>& phi, std::size_t k,
                                     const typename K::Field& f) {
  const K c = phi(k, 0).coeffs()[0];
  if (c.is_zero()) throw Error(ErrorKind::Internal, "split_off_summand: pivot is zero");
  FormMatrix<K> T = FormMatrix<K>::identity(P.A(), f);
  for (std::size_t i = 0; i < P.A().rank(); ++i) T.set(i, k, phi(i, 0));
  const FormMatrix<K> gT = P.g * T;
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < P.A().rank(); ++j)
    if (j != k) keep.push_back(j);
  return {gT.select_columns(keep)};
}

template <class K>
struct StripResult {
  KerPresentation<K> stripped;
  std::vector<Twist> removed;
};

/// Split off every ACM line-bundle summand of E = ker g. Only twists that
/// occur in A can be summands: pi * phi is a constant only through such a
/// summand of A. Each removal is checked against cohomology additivity.
template <class K>
StripResult<K> strip_acm(const KerPresentation<K>& P, const typename K::Field& f) {
  if (!P.gamma_form()) throw Error(ErrorKind::Precondition, "strip_acm needs a gamma-form presentation");
  StripResult<K> res{P, {}};
  const auto [lo, hi] = default_window(P);
  bool progress = true;
  while (progress) {
    progress = false;
    std::set<Twist> candidates(res.stripped.A().summands.begin(), res.stripped.A().summands.end());
    for (const Twist& L : candidates) {
      const auto phis = hom_line_to_ker(res.stripped, L, f);
      if (phis.empty()) continue;
      const auto pis = hom_ker_to_line(res.stripped, L, f);
      const Matrix<K> pm = pairing_matrix(phis, pis);
      std::optional<std::pair<std::size_t, std::size_t>> hit;
      for (std::size_t i = 0; i < pm.rows() && !hit; ++i)
        for (std::size_t j = 0; j < pm.cols() && !hit; ++j)
          if (!pm(i, j).is_zero()) hit = {i, j};
      if (!hit) continue;
      const FormMatrix<K>& phi = phis[hit->first];
      const FormMatrix<K>& pi = pis[hit->second];
      std::optional<std::size_t> k;
      for (std::size_t a = 0; a < res.stripped.A().rank() && !k; ++a)
        if (res.stripped.A()[a] == L && !(pi(0, a) * phi(a, 0)).is_zero()) k = a;
      if (!k) throw Error(ErrorKind::Internal, "nonzero pairing without a matching summand");
      KerPresentation<K> next = split_off_summand(res.stripped, phi, *k, f);
      if (!(add_tables(cohomology_table(next, lo, hi), line_table(L, lo, hi)) ==
            cohomology_table(res.stripped, lo, hi)))
        throw Error(ErrorKind::VerificationFailed, "cohomology table not additive after removing " + L.to_string());
      res.stripped = std::move(next);
      res.removed.push_back(L);
      progress = true;
      break;
    }
  }
  return res;
}

/// Cancel nonzero constant entries of g by automorphisms of A and B.
template <class K>
KerPresentation<K> minimize_gamma(const KerPresentation<K>& P, const typename K::Field&) {
  FormMatrix<K> g = P.g;
  while (true) {
    std::optional<std::pair<std::size_t, std::size_t>> unit;
    for (std::size_t r = 0; r < g.rows() && !unit; ++r)
      for (std::size_t c = 0; c < g.cols() && !unit; ++c)
        if (g.entry_degree(r, c) == BiDegree{0, 0} && !g(r, c).is_zero()) unit = {r, c};
    if (!unit) break;
    const auto [r, c] = *unit;
    const K inv = g(r, c).coeffs()[0].inv();
    FormMatrix<K> h = g;
    // column operations: col_j -= (g(r,j)/a) col_c
    for (std::size_t j = 0; j < g.cols(); ++j) {
      if (j == c || g(r, j).is_zero()) continue;
      const BiForm<K> q = inv * g(r, j);
      for (std::size_t i = 0; i < g.rows(); ++i)
        if (!g(i, c).is_zero()) h.set(i, j, h(i, j) - g(i, c) * q);
    }
    // row r now vanishes away from c; the rows of the other entries of column c
    // only meet row r through the cancelled column, so deleting row r and
    // column c leaves a presentation of the same kernel.
    std::vector<std::size_t> rows, cols;
    for (std::size_t i = 0; i < g.rows(); ++i)
      if (i != r) rows.push_back(i);
    for (std::size_t j = 0; j < g.cols(); ++j)
      if (j != c) cols.push_back(j);
    g = h.select_rows(rows).select_columns(cols);
  }
  return {g};
}

// ---------------------------------------------------------------------------
// Monads

/// kappa is injective on every fiber iff its transpose is surjective as a
/// sheaf map.
template <class K>
bool fiberwise_injective(const FormMatrix<K>& kappa) {
  return sheaf_surjective(kappa.transpose()).surjective;
}

template <class K>
void validate_monad(const MonadPresentation<K>& Mo) {
  if (!(Mo.kappa.dst() == Mo.psi.src())) throw Error(ErrorKind::Validation, "monad maps do not compose");
  if (!(Mo.psi * Mo.kappa).is_zero()) throw Error(ErrorKind::Validation, "psi * kappa is not zero");
}

/// Koszul pieces N -> 2N(v) -> N(2v) for the direction of the H^1 class of a
/// summand N(e) equal to O(0,-2) (second factor) or O(-2,0) (first factor).
template <class K>
struct KoszulPair {
  FormMatrix<K> inj;  // N -> 2N(1-step), (-y, x)^T
  FormMatrix<K> sur;  // 2N(1-step) -> N(2-step), [x, y]
};

template <class K>
KoszulPair<K> koszul_pair(Twist N, bool second_factor, const typename K::Field& f) {
  const BiDegree step = second_factor ? BiDegree{0, 1} : BiDegree{1, 0};
  const BiForm<K> x = second_factor ? BiForm<K>::u(f) : BiForm<K>::s(f);
  const BiForm<K> y = second_factor ? BiForm<K>::v(f) : BiForm<K>::t(f);
  KoszulPair<K> kp{FormMatrix<K>(SplitBundle{N}, SplitBundle{N + step, N + step}),
                   FormMatrix<K>(SplitBundle{N + step, N + step}, SplitBundle{N + step + step})};
  kp.inj.set(0, 0, -y);
  kp.inj.set(1, 0, x);
  kp.sur.set(0, 0, x);
  kp.sur.set(0, 1, y);
  return kp;
}

/// Images in H^0(B(e)) of the H^1 classes of the summands of L(e): for each
/// summand N with N(e) = O(0,-2) or O(-2,0), lift kappa_N through the Koszul
/// injection, factor psi * lift through the Koszul surjection, and read off
/// the resulting section of B(e).
template <class K>
std::vector<Vec<K>> monad_h1_sections(const MonadPresentation<K>& Mo, BiDegree e, const typename K::Field& f) {
  std::vector<Vec<K>> out;
  for (std::size_t k = 0; k < Mo.L().rank(); ++k) {
    const Twist N = Mo.L()[k];
    const Twist Ne = N + e;
    if (kunneth_dim(1, Ne) == 0) continue;
    bool second;
    if (Ne == Twist{0, -2})
      second = true;
    else if (Ne == Twist{-2, 0})
      second = false;
    else
      throw Error(ErrorKind::Unsupported, "H^1 of monad summand " + N.to_string() + " at " + e.to_string() +
                                              " is not a single Koszul class");
    const KoszulPair<K> kp = koszul_pair<K>(N, second, f);
    const FormMatrix<K> kap = Mo.kappa.select_columns({k});
    auto phiT = solve_form_system(kp.inj.transpose(), kap.transpose());
    if (!phiT) throw Error(ErrorKind::Internal, "kappa does not lift through the Koszul injection");
    const FormMatrix<K> phi = phiT->transpose();
    auto chiT = solve_form_system(kp.sur.transpose(), (Mo.psi * phi).transpose());
    if (!chiT) throw Error(ErrorKind::Internal, "psi * lift does not factor through the Koszul surjection");
    out.push_back(column_section(chiT->transpose(), 0));
  }
  return out;
}

/// h^i(E(e)) for a monad with ACM left term, at shifts where H^1(B(e)) = 0.
template <class K>
CohDims monad_dims(const MonadPresentation<K>& Mo, BiDegree e, const typename K::Field& f) {
  if (split_dim(1, Mo.B(), e) != 0)
    throw Error(ErrorKind::PrereqVanishingFailed, "H^1(B" + e.to_string() + ") does not vanish");
  const CohDims fb = cohomology_dims(Mo.middle(), e);
  const long r0 = static_cast<long>(rank(induced_h(Mo.kappa, 0, e)));
  const long r2 = static_cast<long>(rank(induced_h(Mo.kappa, 2, e)));
  long r1 = 0;
  const long h1L = split_dim(1, Mo.L(), e);
  if (h1L > 0) {
    const CokerModel<K> cm = coker_model(Mo.middle(), e, f);
    std::vector<Vec<K>> cls;
    for (const auto& s : monad_h1_sections(Mo, e, f)) cls.push_back(cm.q.project(s));
    r1 = static_cast<long>(span_rank(cm.dim(), cls));
  }
  const long h2L = split_dim(2, Mo.L(), e);
  return {fb[0] - r0 + (h1L - r1), (fb[1] - r1) + (h2L - r2), fb[2] - r2};
}

template <class K>
CohTable cohomology_table(const MonadPresentation<K>& Mo, int lo, int hi, const typename K::Field& f) {
  return make_table(lo, hi, [&](BiDegree e) { return monad_dims(Mo, e, f); });
}

/// The monad of a gamma-form presentation: each spinor summand Sigma_j(d) of
/// A is resolved by its Koszul sequence Sigma_j^{-1}(d) -> 2O(d) -> Sigma_j(d).
template <class K>
MonadPresentation<K> gamma_to_monad(const KerPresentation<K>& P, const typename K::Field& f) {
  if (!P.gamma_form()) throw Error(ErrorKind::Precondition, "gamma_to_monad needs a gamma-form presentation");
  std::vector<Twist> Lt, mid;
  for (const Twist& t : P.A().summands) {
    if (t.a == t.b + 1) Lt.push_back(Sigma1Inv(t.b));
    if (t.b == t.a + 1) Lt.push_back(Sigma2Inv(t.a));
  }
  for (const Twist& t : P.A().summands) {
    if (is_free(t))
      mid.push_back(t);
    else {
      const int d = std::min(t.a, t.b);
      mid.push_back(O(d));
      mid.push_back(O(d));
    }
  }
  FormMatrix<K> delta{SplitBundle(mid), P.A()};
  FormMatrix<K> kappa{SplitBundle(Lt), SplitBundle(mid)};
  std::size_t m = 0, l = 0;
  for (std::size_t a = 0; a < P.A().rank(); ++a) {
    const Twist t = P.A()[a];
    if (is_free(t)) {
      delta.set(a, m++, BiForm<K>::constant(f.one()));
      continue;
    }
    const bool sigma1 = t.a == t.b + 1;  // Sigma1(d) = O(d+1,d): multiply by s,t
    const BiForm<K> x = sigma1 ? BiForm<K>::s(f) : BiForm<K>::u(f);
    const BiForm<K> y = sigma1 ? BiForm<K>::t(f) : BiForm<K>::v(f);
    delta.set(a, m, x);
    delta.set(a, m + 1, y);
    kappa.set(m, l, -y);
    kappa.set(m + 1, l, x);
    m += 2;
    ++l;
  }
  return {kappa, P.g * delta};
}

/// Predicted ACM splitting type of coker(kappa) for a monad whose left term
/// consists of spinor inverses: Sigma_j^{-1}(d) contributes Sigma_j(d), and
/// the free part is read off the diagonal Hilbert function.
template <class K>
SplitBundle predicted_cokernel_type(const MonadPresentation<K>& Mo) {
  std::vector<Twist> spin;
  for (const Twist& N : Mo.L().summands) {
    if (N.b == N.a + 1)
      spin.push_back(Sigma1(N.b));
    else if (N.a == N.b + 1)
      spin.push_back(Sigma2(N.a));
    else
      throw Error(ErrorKind::Unsupported, "left monad term " + N.to_string() + " is not a spinor inverse");
  }
  int lo = 0, hi = 0;
  for (const Twist& t : Mo.A().summands) {
    lo = std::min({lo, t.a, t.b});
    hi = std::max({hi, t.a, t.b});
  }
  for (const Twist& t : Mo.L().summands) {
    lo = std::min({lo, t.a, t.b});
    hi = std::max({hi, t.a, t.b});
  }
  // h0 of the free part on the diagonal; free summands O(m) have m in [lo-1, hi+1]
  std::vector<Twist> freep;
  std::map<int, long> count;
  for (int e = -hi - 2; e <= -lo + 3; ++e) {
    long h = split_dim(0, Mo.A(), O(e)) - split_dim(0, Mo.L(), O(e)) - split_dim(0, SplitBundle(spin), O(e));
    for (const auto& [mm, c] : count) h -= c * kunneth_dim(0, O(mm + e));
    if (h < 0) throw Error(ErrorKind::VerificationFailed, "cokernel Hilbert function is not that of a split bundle");
    if (h > 0) {
      count[-e] += h;
      for (long k = 0; k < h; ++k) freep.push_back(O(-e));
    }
  }
  std::vector<Twist> all = spin;
  all.insert(all.end(), freep.begin(), freep.end());
  if (static_cast<long>(all.size()) != static_cast<long>(Mo.A().rank()) - static_cast<long>(Mo.L().rank()))
    throw Error(ErrorKind::VerificationFailed, "cokernel rank does not match the predicted splitting type");
  return SplitBundle(all);
}

/// Gamma-form presentation of the bundle of a monad whose left term consists
/// of spinor inverses: a random epimorphism eps: A -> A_E killing kappa
/// identifies coker(kappa) with A_E, and g solves g * eps = psi.
template <class K>
KerPresentation<K> monad_to_gamma(const MonadPresentation<K>& Mo, const typename K::Field& f, std::mt19937_64& rng,
                                  int attempts = 10) {
  const SplitBundle AE = predicted_cokernel_type(Mo);
  const FormMatrix<K> kT = Mo.kappa.transpose();
  std::vector<std::vector<Vec<K>>> row_spaces;
  for (const Twist& N : AE.summands) row_spaces.push_back(kernel_basis(induced_h(kT, 0, N), f));
  for (int attempt = 0; attempt < attempts; ++attempt) {
    FormMatrix<K> epsT(AE.dual(), Mo.A().dual());
    for (std::size_t m = 0; m < AE.rank(); ++m) {
      const std::size_t n = static_cast<std::size_t>(split_dim(0, Mo.A().dual(), AE[m]));
      Vec<K> v(n);
      for (const Vec<K>& b : row_spaces[m]) {
        const K c = f.random(rng);
        for (std::size_t i = 0; i < n; ++i) v[i] += c * b[i];
      }
      set_column_section(epsT, m, v);
    }
    const FormMatrix<K> eps = epsT.transpose();
    if (!(eps * Mo.kappa).is_zero()) throw Error(ErrorKind::Internal, "eps does not kill kappa");
    if (!sheaf_surjective(eps).surjective) continue;
    auto gT = solve_form_system(epsT, Mo.psi.transpose());
    if (!gT) throw Error(ErrorKind::VerificationFailed, "psi does not factor through the cokernel of kappa");
    return {gT->transpose()};
  }
  throw Error(ErrorKind::VerificationFailed, "no epimorphism onto the predicted split cokernel found");
}

/// Gamma-form presentation of a rank-2 monad bundle with c1 = 0, given the
/// splitting type of A_E. Such an E is self-dual, so the dual sequence
/// B^v -> A_E^v -> E is built from all sections of E(-N) for the summands N
/// of A_E^v; its kernel is read off in the degrees of B^v. The result is
/// checked against the cohomology table of the monad.
template <class K>
KerPresentation<K> rank2_gamma_from_monad(const MonadPresentation<K>& Mo, const SplitBundle& AE, const SplitBundle& B,
                                          const typename K::Field& f) {
  validate_monad(Mo);
  if (Mo.rank() != 2) throw Error(ErrorKind::Precondition, "rank-2 monad expected");
  const BiDegree c1 = Mo.A().c1() - Mo.B().c1() - Mo.L().c1();
  if (!(c1 == BiDegree{0, 0})) throw Error(ErrorKind::Precondition, "c1 of the monad bundle is not zero");
  const SplitBundle AEd = AE.dual();
  // sigma: A_E^v -> ker psi, one column per section of E(-N), N in A_E^v
  std::vector<Twist> src;
  std::vector<Vec<K>> cols;
  std::set<Twist> seen;
  for (const Twist& N : AEd.summands) {
    if (!seen.insert(N).second) continue;
    const BiDegree e = -N;
    if (split_dim(1, Mo.L(), e) != 0 || split_dim(0, Mo.L(), e) != 0)
      throw Error(ErrorKind::Unsupported, "sections of E" + e.to_string() + " are not sections of ker psi");
    const auto secs = kernel_basis(induced_h(Mo.psi, 0, e), f);
    const long mult = std::count(AEd.summands.begin(), AEd.summands.end(), N);
    if (static_cast<long>(secs.size()) != mult)
      throw Error(ErrorKind::VerificationFailed, "h^0(E" + e.to_string() + ") = " + std::to_string(secs.size()) +
                                                     " does not match the splitting type");
    for (const Vec<K>& v : secs) {
      src.push_back(N);
      cols.push_back(v);
    }
  }
  const SplitBundle Ad(src);
  FormMatrix<K> sigma(Ad, Mo.A());
  for (std::size_t j = 0; j < cols.size(); ++j) set_column_section(sigma, j, cols[j]);
  // columns of g^T: sections of ker([sigma, -kappa]) projected to A_E^v
  std::vector<Twist> bt;
  std::vector<Vec<K>> gcols;
  std::set<Twist> bseen;
  for (const Twist& b : B.dual().summands) {
    if (!bseen.insert(b).second) continue;
    const BiDegree e = -b;
    const Matrix<K> hs = induced_h(sigma, 0, e);
    const Matrix<K> hk = induced_h(Mo.kappa, 0, e);
    const auto ker = kernel_basis(Matrix<K>::hstack(hs, (-f.one()) * hk), f);
    const long mult = std::count(B.summands.begin(), B.summands.end(), -b);
    if (static_cast<long>(ker.size()) != mult)
      throw Error(ErrorKind::VerificationFailed, "relations of the dual sequence do not match B");
    for (const Vec<K>& v : ker) {
      bt.push_back(b);
      gcols.push_back(Vec<K>(v.begin(), v.begin() + static_cast<long>(hs.cols())));
    }
  }
  FormMatrix<K> gT(SplitBundle(bt), Ad);
  for (std::size_t j = 0; j < gcols.size(); ++j) set_column_section(gT, j, gcols[j]);
  KerPresentation<K> P{gT.transpose()};
  if (!sheaf_surjective(P.g).surjective) throw Error(ErrorKind::VerificationFailed, "computed g is not surjective");
  const auto [lo, hi] = default_window(P);
  if (!(cohomology_table(P, lo, hi) == cohomology_table(Mo, lo, hi, f)))
    throw Error(ErrorKind::VerificationFailed, "computed gamma form has a different cohomology table");
  return P;
}

// ---------------------------------------------------------------------------
// Connecting map of the spinor Koszul sequences

/// F = ker(psi: L1 -> L0). For j = 2, w is a section of F(-d,-d+1) and the
/// result is a section h of L0(-d,-d-1) whose class in H^1(F(-d,-d-1)) is the
/// image of w under the connecting map of 0 -> F(0,-1) -> 2F -> F(0,1) -> 0,
/// twisted by O(-d). For j = 1 the roles of (s,t) and (u,v) are swapped.
template <class K>
Vec<K> connecting_delta_spinor(const KerPresentation<K>& P, int j, int d, const Vec<K>& w,
                               const typename K::Field& f) {
  const bool second = j == 2;
  const BiForm<K> x = second ? BiForm<K>::u(f) : BiForm<K>::s(f);
  const BiForm<K> y = second ? BiForm<K>::v(f) : BiForm<K>::t(f);
  const BiDegree step = second ? BiDegree{0, 1} : BiDegree{1, 0};
  const BiDegree base{-d, -d};
  const SplitBundle& L1 = P.A();
  const SplitBundle& L0 = P.B();
  // (a1, a2) with x a1 + y a2 = w
  const Matrix<K> lift = Matrix<K>::hstack(scalar_action(L1, x, 0, base), scalar_action(L1, y, 0, base));
  auto a = solve(lift, w);
  if (!a) throw Error(ErrorKind::Internal, "section does not lift over the Koszul surjection");
  const std::size_t n1 = static_cast<std::size_t>(split_dim(0, L1, base));
  const Vec<K> a1(a->begin(), a->begin() + n1), a2(a->begin() + n1, a->end());
  const Matrix<K> ps = induced_h(P.g, 0, base);
  const Vec<K> b1 = ps * a1, b2 = ps * a2;
  // (b1, b2) = (-y h, x h)
  const BiDegree low = base - step;
  const Matrix<K> fac =
      Matrix<K>::vstack((-f.one()) * scalar_action(L0, y, 0, low), scalar_action(L0, x, 0, low));
  Vec<K> rhs = b1;
  rhs.insert(rhs.end(), b2.begin(), b2.end());
  auto h = solve(fac, rhs);
  if (!h) throw Error(ErrorKind::Internal, "Koszul factorization failed in the connecting map");
  return *h;
}

}  // namespace horrocks
