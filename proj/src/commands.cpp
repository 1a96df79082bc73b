#include "commands.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>

#include "horrocks/fixtures.hpp"
#include "horrocks/io.hpp"
#include "horrocks/random.hpp"
#include "horrocks/stability.hpp"

namespace qcli {

using namespace horrocks;

ExitCode exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse:
    case ErrorKind::Validation:
    case ErrorKind::FieldMismatch:
      return InputError;
    case ErrorKind::Precondition:
    case ErrorKind::NotMinimalGamma:
    case ErrorKind::NotStripped:
    case ErrorKind::Unsupported:
    case ErrorKind::PrereqVanishingFailed:
    case ErrorKind::BoundExceeded:
      return PreconditionError;
    default:
      return PropertyFailure;
  }
}

namespace {

struct Options {
  std::string field;
  std::string window = "-4..4";
  int trials = 200;
  std::uint64_t seed = 1;
  std::string format = "text";
  std::vector<std::string> inputs;
  std::string name;
  std::string dims;
  int lo = 0;
  int degrees = 3;
  std::size_t max_dim = 3;
  std::size_t cap = 3;
  std::string module;
  bool records() const { return format == "records"; }
};

/// File contents; "example:NAME" yields a built-in bundle, "-" reads stdin.
std::string read_input(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  if (path.rfind("example:", 0) == 0) return path;
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

std::pair<int, int> parse_window(const std::string& w) {
  const auto dots = w.find("..");
  try {
    if (dots == std::string::npos) throw std::invalid_argument(w);
    const int lo = std::stoi(w.substr(0, dots)), hi = std::stoi(w.substr(dots + 2));
    if (hi < lo) throw std::invalid_argument(w);
    return {lo, hi};
  } catch (const std::exception&) {
    throw Error(ErrorKind::Parse, "bad window '" + w + "', expected lo..hi");
  }
}

std::map<int, std::size_t> parse_dims(const std::string& s) {
  std::map<int, std::size_t> dims;
  for (const std::string& part : io::split(s, ',')) {
    const auto at = part.find('@');
    try {
      if (at == std::string::npos) throw std::invalid_argument(part);
      const long n = std::stol(part.substr(0, at));
      if (n < 0) throw std::invalid_argument(part);
      dims[std::stoi(part.substr(at + 1))] = static_cast<std::size_t>(n);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, "bad --dims entry '" + part + "', expected n@degree");
    }
  }
  if (!dims.empty())
    for (int d = dims.begin()->first; d <= dims.rbegin()->first; ++d) dims.emplace(d, 0);
  return dims;
}

template <class K>
io::Bundle<K> load_bundle(const std::string& text, const typename K::Field& f) {
  if (text.rfind("example:", 0) == 0) {
    const Fixture<K> fx = fixture<K>(text.substr(8), f);
    if (fx.gamma) return *fx.gamma;
    return *fx.monad;
  }
  return io::parse_bundle<K>(text, f);
}

void print_table(const CohTable& t, const Options& o, std::ostream& out) {
  static const char* names[3] = {"O(e,e)", "O(e+1,e)", "O(e,e+1)"};
  if (o.records()) {
    for (int s = 0; s < 3; ++s)
      for (int e = t.lo; e <= t.hi; ++e) {
        const CohDims& h = t.rows[static_cast<std::size_t>(s)][static_cast<std::size_t>(e - t.lo)];
        out << "twist=" << strip_shift(s, e).to_string() << " h0=" << h[0] << " h1=" << h[1] << " h2=" << h[2] << "\n";
      }
    return;
  }
  for (int s = 0; s < 3; ++s) {
    out << "E(x) " << names[s] << "\n";
    out << "  e  ";
    for (int e = t.lo; e <= t.hi; ++e) out << std::setw(5) << e;
    out << "\n";
    for (int i = 0; i < 3; ++i) {
      out << "  h" << i << " ";
      for (int e = t.lo; e <= t.hi; ++e)
        out << std::setw(5) << t.rows[static_cast<std::size_t>(s)][static_cast<std::size_t>(e - t.lo)][static_cast<std::size_t>(i)];
      out << "\n";
    }
  }
}

template <class K>
int cmd_cohomology(const Options& o, const typename K::Field& f, std::ostream& out) {
  const auto b = load_bundle<K>(read_input(o.inputs.at(0)), f);
  const auto [lo, hi] = parse_window(o.window);
  if (const auto* P = std::get_if<KerPresentation<K>>(&b)) {
    if (!sheaf_surjective(P->g).surjective) throw Error(ErrorKind::Precondition, "g is not surjective as a sheaf map");
    print_table(cohomology_table(*P, lo, hi), o, out);
  } else {
    print_table(cohomology_table(std::get<MonadPresentation<K>>(b), lo, hi, f), o, out);
  }
  return Success;
}

template <class K>
Extraction<K> extract_any(const io::Bundle<K>& b, const typename K::Field& f) {
  if (const auto* P = std::get_if<KerPresentation<K>>(&b)) {
    if (!sheaf_surjective(P->g).surjective) throw Error(ErrorKind::Precondition, "g is not surjective as a sheaf map");
    return extract_invariants(*P, f);
  }
  return extract_invariants(std::get<MonadPresentation<K>>(b), f);
}

void subspace_records(const char* name, const std::map<int, std::size_t>& dims, std::ostream& out) {
  for (const auto& [d, n] : dims) out << name << " degree=" << d << " dim=" << n << "\n";
}

template <class K>
int cmd_invariants(const Options& o, const typename K::Field& f, std::ostream& out) {
  const auto b = load_bundle<K>(read_input(o.inputs.at(0)), f);
  const Extraction<K> ex = extract_any(b, f);
  if (!o.records()) {
    out << io::format_triple(ex.triple, f);
    return Success;
  }
  for (int d = ex.triple.M.lo; d <= ex.triple.M.hi; ++d) out << "M degree=" << d << " dim=" << ex.triple.M.dim(d) << "\n";
  std::map<int, std::size_t> wd, vd;
  for (const auto& [d, v] : ex.triple.W.pieces) wd[d] = v.size();
  for (const auto& [d, v] : ex.triple.V.pieces) vd[d] = v.size();
  subspace_records("W", wd, out);
  subspace_records("V", vd, out);
  return Success;
}

template <class K>
int cmd_synthesize(const Options& o, const typename K::Field& f, std::ostream& out) {
  const HorrocksTriple<K> t = io::parse_triple<K>(read_input(o.inputs.at(0)), f);
  const Synthesis<K> syn = synthesize(t, f);
  if (o.records())
    out << "rank=" << syn.monad.rank() << " K=" << syn.monad.L().rank() << " A=" << syn.monad.A().rank()
        << " B=" << syn.monad.B().rank() << "\n";
  else
    out << io::format_bundle<K>(syn.monad, f);
  return Success;
}

std::string verdict_token(IsoVerdict v) {
  switch (v) {
    case IsoVerdict::Isomorphic:
      return "isomorphic";
    case IsoVerdict::NotIsomorphic:
      return "not-isomorphic";
    case IsoVerdict::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

template <class K>
int cmd_roundtrip(const Options& o, const typename K::Field& f, std::ostream& out) {
  const HorrocksTriple<K> t = io::parse_triple<K>(read_input(o.inputs.at(0)), f);
  std::mt19937_64 rng(o.seed);
  const RoundtripReport<K> r = roundtrip(t, f, rng, o.trials);
  if (o.records()) {
    out << "pass=" << (r.pass ? 1 : 0) << " stage=\"" << r.stage << "\" rank=" << r.bundle_rank << " monad=" << r.monad_L
        << "," << r.monad_A << "," << r.monad_B << " verdict=" << verdict_token(r.verdict) << " trials=" << o.trials << "\n";
  } else {
    out << "roundtrip: " << (r.pass ? "PASS" : "FAIL") << "\n";
    out << "  stage: " << r.stage << "\n";
    out << "  bundle rank: " << r.bundle_rank << "\n";
    out << "  monad ranks: " << r.monad_L << " -> " << r.monad_A << " -> " << r.monad_B << "\n";
    out << "  iso verdict: " << to_string(r.verdict) << " (" << o.trials << " trials)\n";
    if (!r.detail.empty()) out << "  detail: " << r.detail << "\n";
  }
  return r.pass ? Success : PropertyFailure;
}

template <class K>
int cmd_strip_acm(const Options& o, const typename K::Field& f, std::ostream& out) {
  const auto b = load_bundle<K>(read_input(o.inputs.at(0)), f);
  const auto* P = std::get_if<KerPresentation<K>>(&b);
  if (!P) throw Error(ErrorKind::Precondition, "strip-acm needs a gamma-form bundle");
  if (!sheaf_surjective(P->g).surjective) throw Error(ErrorKind::Precondition, "g is not surjective as a sheaf map");
  const StripResult<K> r = strip_acm(minimize_gamma(*P, f), f);
  if (o.records()) {
    for (const Twist& t : r.removed) out << "removed=" << t.to_string() << "\n";
    out << "rank=" << r.stripped.rank() << "\n";
    return Success;
  }
  for (const Twist& t : r.removed) out << "# removed summand O" << t.to_string() << "\n";
  out << io::format_bundle<K>(r.stripped, f);
  return Success;
}

template <class K>
int cmd_iso(const Options& o, const typename K::Field& f, std::ostream& out) {
  const HorrocksTriple<K> a = io::parse_triple<K>(read_input(o.inputs.at(0)), f);
  const HorrocksTriple<K> b = io::parse_triple<K>(read_input(o.inputs.at(1)), f);
  std::mt19937_64 rng(o.seed);
  const IsoReport<K> r = triple_iso(a, b, f, rng, o.trials);
  if (o.records())
    out << "verdict=" << verdict_token(r.verdict) << " trials=" << r.trials << "\n";
  else
    out << "iso: " << to_string(r.verdict) << (r.reason.empty() ? "" : " (" + r.reason + ")") << "\n";
  return r.verdict == IsoVerdict::Isomorphic ? Success : PropertyFailure;
}

template <class K>
std::string roots_text(const JumpingDeterminant<K>& j) {
  if (j.is_zero()) return "zero";
  if (!j.roots_known) return "not enumerated";
  std::string s;
  for (const auto& r : j.roots) s += (s.empty() ? "" : " ") + r.point + "^" + std::to_string(r.multiplicity);
  return s.empty() ? "none" : s;
}

template <class K>
int cmd_stability(const Options& o, const typename K::Field& f, std::ostream& out) {
  const auto b = load_bundle<K>(read_input(o.inputs.at(0)), f);
  const auto* P = std::get_if<KerPresentation<K>>(&b);
  if (!P) throw Error(ErrorKind::Precondition, "stability needs a gamma-form bundle");
  if (!sheaf_surjective(P->g).surjective) throw Error(ErrorKind::Precondition, "g is not surjective as a sheaf map");
  const StabilityReport<K> r = le_potier_check(*P);
  std::optional<std::pair<JumpingDeterminant<K>, JumpingDeterminant<K>>> jd;
  std::string why;
  try {
    jd = jumping_determinants(*P, f);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Precondition) throw;
    why = e.what();
  }
  if (o.records()) {
    out << "h0=" << r.h0 << " h0_1m1=" << r.h0_1m1 << " h0_m11=" << r.h0_m11 << " stable=" << (r.stable ? 1 : 0) << "\n";
    if (jd) {
      out << "det_g1=\"" << jd->first.det.to_string() << "\" repeated_g1=" << jd->first.repeated_root() << "\n";
      out << "det_g2=\"" << jd->second.det.to_string() << "\" repeated_g2=" << jd->second.repeated_root() << "\n";
    }
    return Success;
  }
  out << "h0(E) = " << r.h0 << "\n";
  out << "h0(E(1,-1)) = " << r.h0_1m1 << "\n";
  out << "h0(E(-1,1)) = " << r.h0_m11 << "\n";
  out << "le Potier stable: " << (r.stable ? "yes" : "no") << "\n";
  if (!jd) {
    out << "jumping determinants: not applicable (" << why << ")\n";
    return Success;
  }
  out << "det g1 = " << jd->first.det.to_string() << "  roots: " << roots_text(jd->first) << "\n";
  out << "det g2 = " << jd->second.det.to_string() << "  roots: " << roots_text(jd->second) << "\n";
  out << "both have repeated roots: " << (jd->first.repeated_root() && jd->second.repeated_root() ? "yes" : "no") << "\n";
  return Success;
}

template <class K>
FinLengthModule<K> make_random_module(const Options& o, const typename K::Field& f, std::mt19937_64& rng) {
  if (!o.dims.empty()) return random_module<K>(parse_dims(o.dims), f, rng);
  if (o.degrees < 1 || o.max_dim < 1) throw Error(ErrorKind::Validation, "--degrees and --max-dim must be positive");
  return random_module<K>(o.lo, o.degrees, o.max_dim, f, rng);
}

template <class K>
int cmd_random_module(const Options& o, const typename K::Field& f, std::ostream& out) {
  std::mt19937_64 rng(o.seed);
  out << io::format_module(make_random_module<K>(o, f, rng), f);
  return Success;
}

template <class K>
int cmd_random_triple(const Options& o, const typename K::Field& f, std::ostream& out) {
  std::mt19937_64 rng(o.seed);
  const FinLengthModule<K> M =
      o.module.empty() ? make_random_module<K>(o, f, rng) : io::parse_module<K>(read_input(o.module), f);
  out << io::format_triple(random_triple(M, o.cap, f, rng), f);
  return Success;
}

template <class K>
int cmd_example(const Options& o, const typename K::Field& f, std::ostream& out) {
  if (o.name.empty()) {
    for (const std::string& n : fixture_names()) out << n << "  " << fixture<K>(n, f).summary << "\n";
    return Success;
  }
  const Fixture<K> fx = fixture<K>(o.name, f);
  out << "# " << fx.summary << "\n";
  if (fx.gamma)
    out << io::format_bundle<K>(*fx.gamma, f);
  else
    out << io::format_bundle<K>(*fx.monad, f);
  return Success;
}

template <class K>
int dispatch(const std::string& cmd, const Options& o, const typename K::Field& f, std::ostream& out) {
  if (cmd == "cohomology") return cmd_cohomology<K>(o, f, out);
  if (cmd == "invariants") return cmd_invariants<K>(o, f, out);
  if (cmd == "synthesize") return cmd_synthesize<K>(o, f, out);
  if (cmd == "roundtrip") return cmd_roundtrip<K>(o, f, out);
  if (cmd == "strip-acm") return cmd_strip_acm<K>(o, f, out);
  if (cmd == "iso") return cmd_iso<K>(o, f, out);
  if (cmd == "stability") return cmd_stability<K>(o, f, out);
  if (cmd == "random-module") return cmd_random_module<K>(o, f, out);
  if (cmd == "random-triple") return cmd_random_triple<K>(o, f, out);
  if (cmd == "example") return cmd_example<K>(o, f, out);
  throw Error(ErrorKind::Parse, "unknown command " + cmd);
}

/// --field wins; otherwise the header of the first input file; otherwise F_32003.
io::FieldSpec choose_field(const Options& o) {
  if (!o.field.empty()) return io::parse_field_spec(o.field);
  const std::string first = !o.inputs.empty() ? o.inputs[0] : o.module;
  if (!first.empty() && first != "-" && first.rfind("example:", 0) != 0) {
    std::ifstream in(first);
    if (in) {
      const std::string text(std::istreambuf_iterator<char>(in), {});
      if (auto fs = io::read_field_header(text)) return *fs;
    }
  }
  return io::FieldSpec{};
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Horrocks correspondence on P1 x P1", "qcli"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--field", o.field, "p=<prime> or rationals (default: from the input file, else p=32003)");
  app.add_option("--window", o.window, "degree window lo..hi");
  app.add_option("--trials", o.trials, "random trials for isomorphism search")->check(CLI::PositiveNumber);
  app.add_option("--seed", o.seed, "random seed");
  app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "records"}));

  const std::string bundle_help = "bundle file, '-' for stdin, or example:NAME";
  auto* coh = app.add_subcommand("cohomology", "h0, h1, h2 over the diagonal and spinor twists");
  coh->add_option("bundle", o.inputs, bundle_help)->required()->expected(1);
  auto* inv = app.add_subcommand("invariants", "extract the triple (M, W, V) of a bundle");
  inv->add_option("bundle", o.inputs, bundle_help)->required()->expected(1);
  auto* syn = app.add_subcommand("synthesize", "build a monad from a triple file");
  syn->add_option("triple", o.inputs, "triple file")->required()->expected(1);
  auto* rt = app.add_subcommand("roundtrip", "synthesize, re-extract and compare with the input triple");
  rt->add_option("triple", o.inputs, "triple file")->required()->expected(1);
  auto* st = app.add_subcommand("strip-acm", "remove ACM line-bundle summands");
  st->add_option("bundle", o.inputs, bundle_help)->required()->expected(1);
  auto* iso = app.add_subcommand("iso", "decide whether two triples are isomorphic");
  iso->add_option("triples", o.inputs, "two triple files")->required()->expected(2);
  auto* stab = app.add_subcommand("stability", "le Potier check and jumping-line determinants");
  stab->add_option("bundle", o.inputs, bundle_help)->required()->expected(1);
  for (auto* sc : {app.add_subcommand("random-module", "seeded random finite-length module"),
                   app.add_subcommand("random-triple", "seeded random triple with socle subspaces")}) {
    sc->add_option("--dims", o.dims, "piece dimensions as n@degree,...");
    sc->add_option("--lo", o.lo, "lowest degree when --dims is absent");
    sc->add_option("--degrees", o.degrees, "maximum number of degrees when --dims is absent");
    sc->add_option("--max-dim", o.max_dim, "maximum piece dimension when --dims is absent");
    if (sc->get_name() == "random-triple") {
      sc->add_option("--module", o.module, "use this module file instead of a random one");
      sc->add_option("--cap", o.cap, "maximum dimension of W and V per degree");
    }
  }
  auto* ex = app.add_subcommand("example", "print a built-in bundle, or list them");
  ex->add_option("name", o.name, "example name");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? Success : InputError;
  }
  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    const io::FieldSpec fs = choose_field(o);
    if (fs.rationals) return dispatch<Rational>(cmd, o, Rational::Field{}, out);
    return dispatch<Fp>(cmd, o, Fp::Field(fs.p), out);
  } catch (const Error& e) {
    err << "qcli " << cmd << ": " << e.what() << "\n";
    if (e.kind() == ErrorKind::NotMinimalGamma || e.kind() == ErrorKind::NotStripped)
      err << "hint: run 'qcli strip-acm' first\n";
    return exit_code(e.kind());
  }
}

}  // namespace qcli
