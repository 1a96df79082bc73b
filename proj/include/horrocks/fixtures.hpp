// Built-in example bundles on the quadric.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "horrocks/presheaf.hpp"

namespace horrocks {

template <class K>
struct Fixture {
  std::string name;
  std::string summary;
  std::optional<KerPresentation<K>> gamma;
  std::optional<MonadPresentation<K>> monad;
};

namespace detail {

template <class K>
FormMatrix<K> form_matrix(const SplitBundle& src, const SplitBundle& dst, const std::vector<std::vector<std::string>>& rows,
                          const typename K::Field& f) {
  FormMatrix<K> m(src, dst);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      const BiDegree d = m.entry_degree(i, j);
      m.set(i, j, parse_form<K>(rows[i][j], f, d.valid() ? &d : nullptr));
    }
  return m;
}

}  // namespace detail

inline std::vector<std::string> fixture_names() {
  return {"omega1", "omega2-2", "o-20", "case4", "case5", "case6", "lepotier", "split-sum", "null-corr-family"};
}

template <class K>
Fixture<K> fixture(const std::string& name, const typename K::Field& f) {
  using detail::form_matrix;
  const Twist S2m{-1, 0}, S1m{0, -1};  // Sigma2(-1), Sigma1(-1)
  if (name == "omega1")
    return {name, "Omega^1 restricted to Q: kernel of [x0 x1 x2 x3] on 4O(-1)",
            KerPresentation<K>{form_matrix<K>({O(-1), O(-1), O(-1), O(-1)}, {O(0)}, {{"x0", "x1", "x2", "x3"}}, f)},
            std::nullopt};
  if (name == "omega2-2")
    return {name, "Omega^2(2) restricted to Q: kernel of [s t u v]",
            KerPresentation<K>{form_matrix<K>({S2m, S2m, S1m, S1m}, {O(0)}, {{"s", "t", "u", "v"}}, f)}, std::nullopt};
  if (name == "o-20")
    return {name, "O(-2,0) as the kernel of [s t]",
            KerPresentation<K>{form_matrix<K>({S2m, S2m}, {O(0)}, {{"s", "t"}}, f)}, std::nullopt};
  if (name == "case4")
    return {name, "kernel of [s x2 x3] on Sigma2(-1) + 2O(-1)",
            KerPresentation<K>{form_matrix<K>({S2m, O(-1), O(-1)}, {O(0)}, {{"s", "x2", "x3"}}, f)}, std::nullopt};
  if (name == "case5")
    return {name, "kernel of [s t u] on 2Sigma2(-1) + Sigma1(-1)",
            KerPresentation<K>{form_matrix<K>({S2m, S2m, S1m}, {O(0)}, {{"s", "t", "u"}}, f)}, std::nullopt};
  if (name == "case6")
    return {name, "kernel of [s u t*v] on Sigma2(-1) + Sigma1(-1) + O(-1)",
            KerPresentation<K>{form_matrix<K>({S2m, S1m, O(-1)}, {O(0)}, {{"s", "u", "t*v"}}, f)}, std::nullopt};
  if (name == "lepotier")
    return {name, "rank 2, c1 = 0, le Potier stable: [s t u v; -t s-2t v 0]",
            KerPresentation<K>{form_matrix<K>({Sigma2(0), Sigma2(0), Sigma1(0), Sigma1(0)}, {O(1), O(1)},
                                              {{"s", "t", "u", "v"}, {"-t", "s-2*t", "v", "0"}}, f)},
            std::nullopt};
  if (name == "split-sum")
    return {name, "O(-1,1) + O(1,-1): [s t 0 0; 0 0 u v]",
            KerPresentation<K>{form_matrix<K>({Sigma2(0), Sigma2(0), Sigma1(0), Sigma1(0)}, {O(1), O(1)},
                                              {{"s", "t", "0", "0"}, {"0", "0", "u", "v"}}, f)},
            std::nullopt};
  if (name == "null-corr-family") {
    // omega_01 = omega_23 = omega_03 = 1; kappa = omega * x, psi = x^T
    MonadPresentation<K> mo{form_matrix<K>({O(-1)}, {O(0), O(0), O(0), O(0)}, {{"x1 + x3"}, {"-x0"}, {"x3"}, {"-x0 - x2"}}, f),
                            form_matrix<K>({O(0), O(0), O(0), O(0)}, {O(1)}, {{"x0", "x1", "x2", "x3"}}, f)};
    const SplitBundle AE{Sigma2(0), Sigma2(0), Sigma1(0), Sigma1(0)};
    return {name, "restricted null-correlation bundle: monad O(-1) -> 4O -> O(1) and its gamma form",
            rank2_gamma_from_monad(mo, AE, SplitBundle{O(1), O(1)}, f), mo};
  }
  throw Error(ErrorKind::Validation, "unknown example: " + name);
}

}  // namespace horrocks
