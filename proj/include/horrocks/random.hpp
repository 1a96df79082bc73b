// Seeded random modules, triples and gamma-form bundles.
#pragma once

#include <map>
#include <random>
#include <vector>

#include "horrocks/horrocks.hpp"

namespace horrocks {

/// Random quotient of a free S(Q)-module with the prescribed piece dims
/// (dims[d] for d in the map's range). Generators are added only where the
/// image of the lower pieces is too small.
template <class K>
FinLengthModule<K> random_module(const std::map<int, std::size_t>& dims, const typename K::Field& f,
                                 std::mt19937_64& rng) {
  if (dims.empty()) return FinLengthModule<K>::zero();
  const int lo = dims.begin()->first, hi = dims.rbegin()->first;
  auto target = [&](int d) {
    auto it = dims.find(d);
    return it == dims.end() ? std::size_t{0} : it->second;
  };
  std::vector<Twist> gens;
  std::vector<std::vector<Vec<K>>> rels;  // rels[d - lo]: basis of K_d inside H^0(L0(d,d))
  std::vector<QuotientData<K>> quot;
  for (int d = lo; d <= hi; ++d) {
    std::vector<Vec<K>> forced;
    if (d > lo) {
      const SplitBundle L0(gens);
      for (int k = 0; k < 4; ++k) {
        const Matrix<K> act = scalar_action(L0, BiForm<K>::x(k, f), 0, O(d - 1));
        for (const Vec<K>& r : rels.back()) forced.push_back(act * r);
      }
    }
    std::size_t n = static_cast<std::size_t>(split_dim(0, SplitBundle(gens), O(d)));
    const std::size_t have = n - span_rank(n, forced);
    const std::size_t want = target(d);
    for (std::size_t k = have; k < want; ++k) gens.push_back(O(-d));
    const std::size_t n2 = static_cast<std::size_t>(split_dim(0, SplitBundle(gens), O(d)));
    for (Vec<K>& v : forced) v.resize(n2, f.zero());
    n = n2;
    std::vector<Vec<K>> K_d = forced;
    std::size_t r = span_rank(n, K_d);
    while (n - r > want) {
      K_d.push_back(random_vector<K>(n, f, rng));
      r = span_rank(n, K_d);
    }
    quot.push_back(quotient_data(n, K_d, f));
    rels.push_back(std::move(K_d));
  }
  std::vector<std::size_t> ds;
  for (const auto& q : quot) ds.push_back(q.dim());
  auto M = FinLengthModule<K>::with_dims(lo, ds);
  const SplitBundle L0(gens);
  for (int d = lo; d < hi; ++d)
    for (int k = 0; k < 4; ++k) {
      const Matrix<K> act = scalar_action(L0, BiForm<K>::x(k, f), 0, O(d));
      const auto& qs = quot[static_cast<std::size_t>(d - lo)];
      const auto& qt = quot[static_cast<std::size_t>(d - lo + 1)];
      std::vector<Vec<K>> cols;
      for (std::size_t c = 0; c < qs.dim(); ++c) cols.push_back(qt.project(act * qs.lift(unit_vector<K>(qs.dim(), c, f))));
      M.set_op(k, d, Matrix<K>::from_columns(qt.dim(), cols));
    }
  return M;
}

/// Dims drawn uniformly: support of 1..max_degrees consecutive degrees from
/// lo, each piece of dimension 1..max_dim.
template <class K>
FinLengthModule<K> random_module(int lo, int max_degrees, std::size_t max_dim, const typename K::Field& f,
                                 std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nd(1, max_degrees);
  std::uniform_int_distribution<std::size_t> dd(1, max_dim);
  std::map<int, std::size_t> dims;
  const int n = nd(rng);
  for (int d = lo; d < lo + n; ++d) dims[d] = dd(rng);
  return random_module<K>(dims, f, rng);
}

/// Random subspace of the socle in each degree, of random dimension up to
/// min(socle dim, cap).
template <class K>
GradedSubspace<K> random_socle_subspace(const TriDiagModule<K>& T, Family fam, std::size_t cap, const typename K::Field& f,
                                        std::mt19937_64& rng) {
  const GradedSubspace<K> soc = socle_subspace(T, fam, f);
  GradedSubspace<K> out;
  out.family = fam;
  for (const auto& [d, basis] : soc.pieces) {
    std::uniform_int_distribution<std::size_t> pick(0, std::min(basis.size(), cap));
    const std::size_t k = pick(rng);
    std::vector<Vec<K>> vs;
    for (std::size_t i = 0; i < k; ++i) {
      Vec<K> v(basis[0].size(), f.zero());
      for (const Vec<K>& b : basis) {
        const K c = f.random(rng);
        for (std::size_t j = 0; j < v.size(); ++j) v[j] += c * b[j];
      }
      vs.push_back(v);
    }
    if (!vs.empty()) out.pieces.emplace(d, std::move(vs));
  }
  out.normalize(T);
  return out;
}

template <class K>
HorrocksTriple<K> random_triple(const FinLengthModule<K>& M, std::size_t cap, const typename K::Field& f,
                                std::mt19937_64& rng) {
  const TripleContext<K> c = triple_context(M, f);
  HorrocksTriple<K> t;
  t.M = M;
  t.W = random_socle_subspace(c.T, Family::M10, cap, f, rng);
  t.V = random_socle_subspace(c.T, Family::M01, cap, f, rng);
  return t;
}

/// Random sheaf-surjective g: A -> B with A a sum of ACM twists and B free,
/// minimized and stripped of ACM summands. Retries until surjective.
template <class K>
KerPresentation<K> random_gamma(const typename K::Field& f, std::mt19937_64& rng, int attempts = 50) {
  std::uniform_int_distribution<int> nb(1, 2), na_extra(1, 3), kind(0, 2), tw(-1, 0);
  for (int a = 0; a < attempts; ++a) {
    const int rb = nb(rng);
    std::vector<Twist> bt(static_cast<std::size_t>(rb), O(0));
    if (rb == 2 && kind(rng) == 0) bt[1] = O(1);
    std::vector<Twist> at;
    const int ra = rb + na_extra(rng) + 1;
    for (int i = 0; i < ra; ++i) {
      const int d = tw(rng) - 0;
      switch (kind(rng)) {
        case 0:
          at.push_back(Sigma1(d - 1 + (i % 2)));
          break;
        case 1:
          at.push_back(Sigma2(d - 1 + (i % 2)));
          break;
        default:
          at.push_back(O(d - (i % 2)));
      }
    }
    FormMatrix<K> g{SplitBundle(at), SplitBundle(bt)};
    for (std::size_t r = 0; r < g.rows(); ++r)
      for (std::size_t c = 0; c < g.cols(); ++c)
        if (g.entry_degree(r, c).valid()) g.set(r, c, BiForm<K>::random(g.entry_degree(r, c), f, rng));
    try {
      if (!sheaf_surjective(g).surjective) continue;
    } catch (const Error&) {
      continue;
    }
    KerPresentation<K> P = minimize_gamma(KerPresentation<K>{g}, f);
    P = strip_acm(P, f).stripped;
    if (P.A().rank() == 0 || P.B().rank() == 0) continue;
    if (P.rank() < 1) continue;
    return P;
  }
  throw Error(ErrorKind::BoundExceeded, "no random surjection found");
}

}  // namespace horrocks
