#pragma once

// Text literals and JSON encodings for field elements, subspaces, group
// elements and operators.

#include "weil/canonical.hpp"

#include <json.hpp>

#include <cmath>
#include <cstddef>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace weil::io {

using json = nlohmann::ordered_json;

class ParseError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Field elements

inline json to_json(const CycNum& a)
{
  json coeffs = json::array();
  for (const auto& c : a.coeffs())
    coeffs.push_back(json::array({c.get_num().get_str(), c.get_den().get_str()}));
  return json{{"p", a.order()}, {"coeffs", coeffs}};
}

inline CycNum cyc_from_json(const json& j)
{
  const int p = j.at("p").get<int>();
  std::vector<Rational> c;
  for (const auto& e : j.at("coeffs")) {
    if (!e.is_array() || e.size() != 2)
      throw ParseError("CycNum: coefficient must be [num, den]");
    Rational q(mpz_class(e[0].get<std::string>()), mpz_class(e[1].get<std::string>()));
    if (q.get_den() == 0)
      throw ParseError("CycNum: zero denominator");
    q.canonicalize();
    c.push_back(q);
  }
  return CycNum(p, std::move(c));
}

/// Doubles rounded to 12 significant digits so renderings are stable.
inline double stable(double x)
{
  if (std::abs(x) < 1e-12)
    return 0.0;
  std::ostringstream os;
  os.precision(12);
  os << x;
  return std::stod(os.str());
}

inline json to_float_json(const CycNum& a)
{
  const auto z = a.to_complex();
  return json{{"re", stable(z.real())}, {"im", stable(z.imag())}};
}

inline json to_json(const CycMatrix& m)
{
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j)
      row.push_back(to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

inline json to_float_json(const CycMatrix& m)
{
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j)
      row.push_back(to_float_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

inline json to_json(const std::vector<CycNum>& v)
{
  json a = json::array();
  for (const auto& x : v)
    a.push_back(to_json(x));
  return a;
}

inline json to_json(const FpMat& m)
{
  json rows = json::array();
  for (const auto& r : m)
    rows.push_back(r);
  return rows;
}

// ---------------------------------------------------------------------------
// Text literals

inline std::vector<std::string> split(const std::string& s, char sep)
{
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep))
    out.push_back(cur);
  if (!s.empty() && s.back() == sep)
    out.emplace_back();
  return out;
}

inline std::string trim(const std::string& s)
{
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos)
    return "";
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

inline long long parse_int(const std::string& s)
{
  const std::string t = trim(s);
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(t, &pos);
  } catch (const std::exception&) {
    throw ParseError("expected an integer, got '" + s + "'");
  }
  if (pos != t.size())
    throw ParseError("expected an integer, got '" + s + "'");
  return v;
}

inline FpVec parse_vector(const std::string& s, int p)
{
  FpVec v;
  if (trim(s).empty())
    return v;
  for (const auto& tok : split(s, ','))
    v.push_back(mod_p(parse_int(tok), p));
  return v;
}

inline FpMat parse_rows(const std::string& s, int p)
{
  FpMat m;
  if (trim(s).empty())
    return m;
  for (const auto& row : split(s, ';'))
    m.push_back(parse_vector(row, p));
  return m;
}

/// "key1=...|key2=..." into the two values, checking the keys.
inline std::pair<std::string, std::string> parse_pair(const std::string& s, const std::string& k1,
                                                      const std::string& k2)
{
  auto parts = split(s, '|');
  if (parts.size() != 2)
    throw ParseError("expected '" + k1 + "=...|" + k2 + "=...', got '" + s + "'");
  auto value = [&](const std::string& part, const std::string& key) {
    const std::string t = trim(part);
    if (t.rfind(key + "=", 0) != 0)
      throw ParseError("expected '" + key + "=' in '" + s + "'");
    return t.substr(key.size() + 1);
  };
  return {value(parts[0], k1), value(parts[1], k2)};
}

/// "rows=1,0;0,1|o=2"; the orientation is relative to the given rows.
inline OrientedSubspace parse_oriented(const std::string& s, int p, int ambient)
{
  auto [rows_s, o_s] = parse_pair(s, "rows", "o");
  FpMat rows = parse_rows(rows_s, p);
  for (const auto& r : rows)
    if (static_cast<int>(r.size()) != ambient)
      throw ParseError("subspace row of length " + std::to_string(r.size()) + ", expected " + std::to_string(ambient));
  const long long o = parse_int(o_s);
  if (mod_p(o, p) == 0)
    throw ParseError("orientation must be nonzero mod p");
  return OrientedSubspace::from_rows(p, ambient, rows, static_cast<int>(mod_p(o, p)));
}

/// "v=1,0|z=2"
inline HeisElement parse_heis(const std::string& s, int p, int ambient)
{
  auto [v_s, z_s] = parse_pair(s, "v", "z");
  FpVec v = parse_vector(v_s, p);
  if (static_cast<int>(v.size()) != ambient)
    throw ParseError("Heisenberg vector of length " + std::to_string(v.size()) + ", expected " +
                     std::to_string(ambient));
  return {v, mod_p(parse_int(z_s), p)};
}

/// "g=a,b;c,d" (row-major)
inline SpElement parse_sp(const std::string& s, const SymplecticSpace& V)
{
  const std::string t = trim(s);
  if (t.rfind("g=", 0) != 0)
    throw ParseError("expected 'g=...', got '" + s + "'");
  FpMat m = parse_rows(t.substr(2), V.p());
  if (m.size() != static_cast<std::size_t>(V.dim()))
    throw ParseError("group element must have " + std::to_string(V.dim()) + " rows");
  for (const auto& r : m)
    if (r.size() != static_cast<std::size_t>(V.dim()))
      throw ParseError("group element must have " + std::to_string(V.dim()) + " columns");
  try {
    return SpElement(V, std::move(m));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("group element: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Documents

inline json basis_json(const ModelSpace& m)
{
  json b = json::array();
  for (const auto& r : m.reps())
    b.push_back(r);
  return b;
}

inline json intertwiner_json(const Intertwiner& T, bool with_float)
{
  json j{{"kind", "intertwiner"},
         {"p", T.source.p()},
         {"n", T.source.space().n()},
         {"source", T.source.label().to_string()},
         {"target", T.target.label().to_string()},
         {"basis", basis_json(T.source)},
         {"matrix", to_json(T.mat)}};
  if (with_float)
    j["float_matrix"] = to_float_json(T.mat);
  return j;
}

inline json weil_json(const CanonicalSpace& c, const WeilMatrix& w, bool with_float)
{
  const ModelSpace m = c.base_model();
  json j{{"kind", "weil_matrix"},
         {"p", c.p()},
         {"n", c.space().n()},
         {"source", c.base().to_string()},
         {"target", c.base().to_string()},
         {"basis", basis_json(m)},
         {"g", to_json(w.g.mat())},
         {"matrix", to_json(w.mat)}};
  if (with_float)
    j["float_matrix"] = to_float_json(w.mat);
  return j;
}

inline json model_vector_json(const ModelVector& f)
{
  return json{{"label", f.model.label().to_string()}, {"basis", basis_json(f.model)}, {"values", to_json(f.values)}};
}

/// Flattens a JSON document into "path,value" lines.
inline void to_csv(const json& j, const std::string& path, std::ostream& os)
{
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      to_csv(it.value(), path.empty() ? it.key() : path + "." + it.key(), os);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i)
      to_csv(j[i], path + "[" + std::to_string(i) + "]", os);
  } else {
    std::string v = j.is_string() ? j.get<std::string>() : j.dump();
    if (v.find_first_of(",\"\n") != std::string::npos) {
      std::string q = "\"";
      for (char ch : v)
        q += (ch == '"') ? std::string("\"\"") : std::string(1, ch);
      v = q + "\"";
    }
    os << path << "," << v << "\n";
  }
}

} // namespace weil::io
