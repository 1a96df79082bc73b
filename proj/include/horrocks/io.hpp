// Text formats for modules, bundles and triples.
//
//   field p=32003            (or: field rationals)
//   module
//   degrees 0..1
//   dim 0: 2
//   x0 0: 1,0;0,1            rows separated by ';', entries by ','
//
//   bundle gamma             (or: bundle monad, with K: and kappa:)
//   A: (-1,0) (-1,0)
//   B: (0,0)
//   g: [s, t]
//
// A triple file is a module file followed by
//   W 0: 1,0;0,1             one vector per ';'-separated row
//   V 0: ...
// Blank lines and lines starting with '#' are ignored.
#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "horrocks/horrocks.hpp"

namespace horrocks::io {

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

struct Line {
  int number;
  std::string text;
};

inline std::vector<Line> content_lines(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string l;
  int n = 0;
  while (std::getline(in, l)) {
    ++n;
    l = trim(l);
    if (l.empty() || l[0] == '#') continue;
    out.push_back({n, l});
  }
  return out;
}

inline Error parse_error(const Line& l, const std::string& why) {
  return Error(ErrorKind::Parse, "line " + std::to_string(l.number) + ": " + why);
}

/// Value of the 'field' header: "rationals" or the prime.
struct FieldSpec {
  bool rationals = false;
  std::uint32_t p = 32003;
  std::string to_string() const { return rationals ? "rationals" : "p=" + std::to_string(p); }
};

inline FieldSpec parse_field_spec(const std::string& v) {
  FieldSpec fs;
  if (v == "rationals" || v == "Q") {
    fs.rationals = true;
    return fs;
  }
  std::string num = v.rfind("p=", 0) == 0 ? v.substr(2) : v;
  try {
    std::size_t used = 0;
    const unsigned long p = std::stoul(num, &used);
    if (used != num.size()) throw std::invalid_argument(num);
    fs.p = static_cast<std::uint32_t>(p);
  } catch (const std::exception&) {
    throw Error(ErrorKind::Parse, "bad field '" + v + "'");
  }
  if (!Fp::Field::is_prime(fs.p)) throw Error(ErrorKind::Validation, "not a prime: " + std::to_string(fs.p));
  return fs;
}

/// The field named in the first content line, if there is one.
inline std::optional<FieldSpec> read_field_header(const std::string& text) {
  const auto ls = content_lines(text);
  if (ls.empty() || ls[0].text.rfind("field", 0) != 0) return std::nullopt;
  return parse_field_spec(trim(ls[0].text.substr(5)));
}

template <class K>
std::string field_header(const typename K::Field& f) {
  if constexpr (std::is_same_v<K, Fp>)
    return "field p=" + std::to_string(f.p) + "\n";
  else
    return "field rationals\n";
}

template <class K>
void check_field(const std::vector<Line>& ls, std::size_t& i, const typename K::Field& f) {
  if (i < ls.size() && ls[i].text.rfind("field", 0) == 0) {
    const FieldSpec fs = parse_field_spec(trim(ls[i].text.substr(5)));
    bool ok;
    if constexpr (std::is_same_v<K, Fp>)
      ok = !fs.rationals && fs.p == f.p;
    else
      ok = fs.rationals;
    if (!ok) throw Error(ErrorKind::FieldMismatch, "file is over " + fs.to_string() + ", expected " + f.name());
    ++i;
  }
}

// ---------------------------------------------------------------------------
// Matrices and vectors

template <class K>
std::string format_rows(const std::vector<Vec<K>>& rows) {
  std::string out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (r) out += ";";
    for (std::size_t c = 0; c < rows[r].size(); ++c) out += (c ? "," : "") + rows[r][c].to_string();
  }
  return out;
}

template <class K>
std::vector<Vec<K>> parse_rows(const std::string& s, const typename K::Field& f, const Line& l) {
  std::vector<Vec<K>> rows;
  if (trim(s).empty()) return rows;
  for (const std::string& r : split(s, ';')) {
    Vec<K> v;
    for (const std::string& e : split(r, ',')) {
      try {
        v.push_back(f.parse(e));
      } catch (const Error& err) {
        throw parse_error(l, err.what());
      }
    }
    rows.push_back(std::move(v));
  }
  return rows;
}

inline std::pair<std::string, std::string> key_value(const Line& l) {
  const auto c = l.text.find(':');
  if (c == std::string::npos) throw parse_error(l, "expected 'key: value'");
  return {trim(l.text.substr(0, c)), trim(l.text.substr(c + 1))};
}

inline std::pair<std::string, int> keyed_degree(const Line& l, const std::string& key) {
  std::istringstream in(key);
  std::string name;
  int d;
  if (!(in >> name >> d)) throw parse_error(l, "expected '<name> <degree>:'");
  std::string rest;
  if (in >> rest) throw parse_error(l, "trailing text before ':'");
  return {name, d};
}

// ---------------------------------------------------------------------------
// Modules

template <class K>
std::string format_module_body(const FinLengthModule<K>& M) {
  std::ostringstream out;
  out << "module\n";
  out << "degrees " << M.lo << ".." << M.hi << "\n";
  for (int d = M.lo; d <= M.hi; ++d) out << "dim " << d << ": " << M.dim(d) << "\n";
  for (int k = 0; k < 4; ++k)
    for (int d = M.lo; d < M.hi; ++d) {
      const Matrix<K> m = M.op(k, d);
      if (m.rows() == 0 || m.cols() == 0) continue;
      std::vector<Vec<K>> rows;
      for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
      out << "x" << k << " " << d << ": " << format_rows<K>(rows) << "\n";
    }
  return out.str();
}

template <class K>
std::string format_module(const FinLengthModule<K>& M, const typename K::Field& f) {
  return field_header<K>(f) + format_module_body(M);
}

template <class K>
FinLengthModule<K> parse_module_lines(const std::vector<Line>& ls, std::size_t& i, const typename K::Field& f) {
  if (i >= ls.size() || ls[i].text != "module") throw Error(ErrorKind::Parse, "expected 'module'");
  const Line& head = ls[i];
  ++i;
  if (i >= ls.size() || ls[i].text.rfind("degrees", 0) != 0) throw parse_error(head, "expected 'degrees lo..hi' after 'module'");
  const std::string range = trim(ls[i].text.substr(7));
  const auto dots = range.find("..");
  int lo, hi;
  try {
    if (dots == std::string::npos) throw std::invalid_argument(range);
    lo = std::stoi(range.substr(0, dots));
    hi = std::stoi(range.substr(dots + 2));
  } catch (const std::exception&) {
    throw parse_error(ls[i], "bad degree range '" + range + "'");
  }
  if (hi < lo - 1) throw parse_error(ls[i], "empty or reversed degree range");
  ++i;
  std::vector<std::size_t> dims(static_cast<std::size_t>(hi - lo + 1), 0);
  std::vector<std::tuple<int, int, std::vector<Vec<K>>, Line>> opl;
  while (i < ls.size()) {
    const Line& l = ls[i];
    const auto c = l.text.find(':');
    if (c == std::string::npos) break;
    const auto [key, value] = key_value(l);
    if (key.rfind("dim", 0) == 0) {
      const auto [name, d] = keyed_degree(l, key);
      if (name != "dim") throw parse_error(l, "unknown key '" + name + "'");
      if (d < lo || d > hi) throw Error(ErrorKind::Validation, "line " + std::to_string(l.number) + ": degree outside range");
      try {
        dims[static_cast<std::size_t>(d - lo)] = static_cast<std::size_t>(std::stoul(value));
      } catch (const std::exception&) {
        throw parse_error(l, "bad dimension '" + value + "'");
      }
    } else if (key.size() >= 2 && key[0] == 'x' && key[1] >= '0' && key[1] <= '3') {
      const auto [name, d] = keyed_degree(l, key);
      if (name.size() != 2) throw parse_error(l, "unknown operator '" + name + "'");
      opl.emplace_back(name[1] - '0', d, parse_rows<K>(value, f, l), l);
    } else {
      break;
    }
    ++i;
  }
  auto M = FinLengthModule<K>::with_dims(lo, dims);
  for (const auto& [k, d, rows, l] : opl) {
    if (d < lo || d >= hi) throw Error(ErrorKind::Validation, "line " + std::to_string(l.number) + ": operator degree outside range");
    Matrix<K> m(M.dim(d + 1), M.dim(d));
    if (rows.size() != m.rows()) throw Error(ErrorKind::Validation, "line " + std::to_string(l.number) + ": wrong number of rows");
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != m.cols())
        throw Error(ErrorKind::Validation, "line " + std::to_string(l.number) + ": wrong number of columns");
      for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
    }
    M.set_op(k, d, m);
  }
  require_valid(M);
  return M;
}

template <class K>
FinLengthModule<K> parse_module(const std::string& text, const typename K::Field& f) {
  const auto ls = content_lines(text);
  std::size_t i = 0;
  check_field<K>(ls, i, f);
  auto M = parse_module_lines<K>(ls, i, f);
  if (i != ls.size()) throw parse_error(ls[i], "unexpected line");
  return M;
}

// ---------------------------------------------------------------------------
// Bundles

inline std::string format_twists(const SplitBundle& S) { return S.to_string(); }

inline SplitBundle parse_twists(const std::string& s, const Line& l) {
  std::vector<Twist> ts;
  std::size_t pos = 0;
  while (true) {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos >= s.size()) break;
    if (s[pos] != '(') throw parse_error(l, "expected '(' in twist list");
    const auto close = s.find(')', pos);
    if (close == std::string::npos) throw parse_error(l, "unclosed twist");
    const auto parts = split(s.substr(pos + 1, close - pos - 1), ',');
    if (parts.size() != 2) throw parse_error(l, "twist needs two integers");
    try {
      ts.push_back({std::stoi(parts[0]), std::stoi(parts[1])});
    } catch (const std::exception&) {
      throw parse_error(l, "bad twist '" + s.substr(pos, close - pos + 1) + "'");
    }
    pos = close + 1;
  }
  return SplitBundle(ts);
}

template <class K>
std::string format_form_matrix(const FormMatrix<K>& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) out += "; ";
    for (std::size_t j = 0; j < m.cols(); ++j) out += (j ? ", " : "") + m(i, j).to_string();
  }
  return out + "]";
}

template <class K>
FormMatrix<K> parse_form_matrix(const std::string& s, const SplitBundle& src, const SplitBundle& dst,
                                const typename K::Field& f, const Line& l) {
  const std::string t = trim(s);
  if (t.size() < 2 || t.front() != '[' || t.back() != ']') throw parse_error(l, "matrix must be enclosed in [ ]");
  const std::string body = trim(t.substr(1, t.size() - 2));
  FormMatrix<K> m(src, dst);
  const auto rows = body.empty() ? std::vector<std::string>{} : split(body, ';');
  if (rows.size() != dst.rank() && !(dst.rank() == 0 && rows.empty()))
    throw Error(ErrorKind::Validation, "line " + std::to_string(l.number) + ": matrix has " + std::to_string(rows.size()) +
                                           " rows, target has rank " + std::to_string(dst.rank()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto es = split(rows[i], ',');
    if (es.size() != src.rank())
      throw Error(ErrorKind::Validation, "line " + std::to_string(l.number) + ": row " + std::to_string(i) + " has " +
                                             std::to_string(es.size()) + " entries, source has rank " +
                                             std::to_string(src.rank()));
    for (std::size_t j = 0; j < es.size(); ++j) {
      const BiDegree d = m.entry_degree(i, j);
      try {
        m.set(i, j, parse_form<K>(es[j], f, d.valid() ? &d : nullptr));
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::Parse) throw parse_error(l, e.what());
        throw Error(e.kind(), "line " + std::to_string(l.number) + ": entry (" + std::to_string(i) + "," +
                                  std::to_string(j) + "): " + e.what());
      }
    }
  }
  return m;
}

template <class K>
using Bundle = std::variant<KerPresentation<K>, MonadPresentation<K>>;

template <class K>
std::string format_bundle(const Bundle<K>& b, const typename K::Field& f) {
  std::ostringstream out;
  out << field_header<K>(f);
  if (const auto* P = std::get_if<KerPresentation<K>>(&b)) {
    out << "bundle gamma\n";
    out << "A: " << format_twists(P->A()) << "\n";
    out << "B: " << format_twists(P->B()) << "\n";
    out << "g: " << format_form_matrix(P->g) << "\n";
  } else {
    const auto& M = std::get<MonadPresentation<K>>(b);
    out << "bundle monad\n";
    out << "K: " << format_twists(M.L()) << "\n";
    out << "A: " << format_twists(M.A()) << "\n";
    out << "B: " << format_twists(M.B()) << "\n";
    out << "kappa: " << format_form_matrix(M.kappa) << "\n";
    out << "g: " << format_form_matrix(M.psi) << "\n";
  }
  return out.str();
}

template <class K>
Bundle<K> parse_bundle(const std::string& text, const typename K::Field& f) {
  const auto ls = content_lines(text);
  std::size_t i = 0;
  check_field<K>(ls, i, f);
  if (i >= ls.size() || ls[i].text.rfind("bundle", 0) != 0) throw Error(ErrorKind::Parse, "expected 'bundle gamma|monad'");
  const std::string kind = trim(ls[i].text.substr(6));
  if (kind != "gamma" && kind != "monad") throw parse_error(ls[i], "bundle kind must be gamma or monad");
  ++i;
  std::map<std::string, std::pair<std::string, Line>> kv;
  for (; i < ls.size(); ++i) {
    const auto [k, v] = key_value(ls[i]);
    if (kv.count(k)) throw parse_error(ls[i], "duplicate key '" + k + "'");
    kv.emplace(k, std::make_pair(v, ls[i]));
  }
  auto need = [&](const std::string& k) -> const std::pair<std::string, Line>& {
    auto it = kv.find(k);
    if (it == kv.end()) throw Error(ErrorKind::Parse, "missing '" + k + ":'");
    return it->second;
  };
  const std::vector<std::string> allowed = kind == "gamma" ? std::vector<std::string>{"A", "B", "g"}
                                                           : std::vector<std::string>{"K", "A", "B", "kappa", "g"};
  for (const auto& [k, v] : kv)
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) throw parse_error(v.second, "unknown key '" + k + "'");
  const SplitBundle A = parse_twists(need("A").first, need("A").second);
  const SplitBundle B = parse_twists(need("B").first, need("B").second);
  const FormMatrix<K> g = parse_form_matrix<K>(need("g").first, A, B, f, need("g").second);
  if (kind == "gamma") return KerPresentation<K>{g};
  const SplitBundle L = parse_twists(need("K").first, need("K").second);
  MonadPresentation<K> mo{parse_form_matrix<K>(need("kappa").first, L, A, f, need("kappa").second), g};
  validate_monad(mo);
  return mo;
}

// ---------------------------------------------------------------------------
// Triples

template <class K>
std::string format_triple(const HorrocksTriple<K>& t, const typename K::Field& f) {
  std::string out = format_module(t.M, f);
  for (const auto& [d, vs] : t.W.pieces) out += "W " + std::to_string(d) + ": " + format_rows<K>(vs) + "\n";
  for (const auto& [d, vs] : t.V.pieces) out += "V " + std::to_string(d) + ": " + format_rows<K>(vs) + "\n";
  return out;
}

/// Parses and validates (vector lengths, socle conditions) a triple.
template <class K>
HorrocksTriple<K> parse_triple(const std::string& text, const typename K::Field& f) {
  const auto ls = content_lines(text);
  std::size_t i = 0;
  check_field<K>(ls, i, f);
  HorrocksTriple<K> t;
  t.M = parse_module_lines<K>(ls, i, f);
  for (; i < ls.size(); ++i) {
    const auto [key, value] = key_value(ls[i]);
    const auto [name, d] = keyed_degree(ls[i], key);
    if (name != "W" && name != "V") throw parse_error(ls[i], "expected W or V block");
    auto& S = name == "W" ? t.W : t.V;
    if (S.pieces.count(d)) throw parse_error(ls[i], "duplicate " + name + " block in degree " + std::to_string(d));
    S.pieces.emplace(d, parse_rows<K>(value, f, ls[i]));
  }
  const TripleContext<K> c = triple_context(t.M, f);
  validate_triple(t, c, f);
  t.W.normalize(c.T);
  t.V.normalize(c.T);
  return t;
}

}  // namespace horrocks::io
