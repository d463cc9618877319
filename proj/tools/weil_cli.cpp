// weil: construction, export and verification front end.
//
// Exit codes: 0 all checks pass, 1 a check failed (the report carries the
// witness), 2 usage or configuration error.

#include "weil/weil.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using weil::io::json;

constexpr int exit_pass = 0;
constexpr int exit_fail = 1;
constexpr int exit_usage = 2;

struct RunConfig
{
  int p = 3;
  int dim = 2;
  std::uint64_t seed = 0;
  int samples = 0;
  std::string format = "json";
  std::string out;

  int n() const { return dim / 2; }
  bool floats() const { return format == "float"; }
};

class UsageError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

void validate(const RunConfig& rc)
{
  if (!weil::is_odd_prime(rc.p) || rc.p > 7)
    throw UsageError("--p must be an odd prime <= 7, got " + std::to_string(rc.p));
  if (rc.dim < 2 || rc.dim > 4 || rc.dim % 2 != 0)
    throw UsageError("--dim must be 2 or 4, got " + std::to_string(rc.dim));
  if (rc.samples < 0)
    throw UsageError("--samples must be non-negative");
}

void emit(const RunConfig& rc, const json& doc)
{
  std::ostringstream os;
  if (rc.format == "csv")
    weil::io::to_csv(doc, "", os);
  else
    os << doc.dump(2) << "\n";
  if (rc.out.empty()) {
    std::cout << os.str();
    return;
  }
  std::ofstream f(rc.out, std::ios::binary);
  if (!f)
    throw UsageError("cannot open output file '" + rc.out + "'");
  f << os.str();
}

json subspace_json(const weil::OrientedSubspace& L)
{
  return json{{"text", L.to_string()}, {"rows", weil::io::to_json(L.rows())}, {"o", L.orient}};
}

json subspace_json(const weil::Subspace& L)
{
  return json{{"text", L.to_string()}, {"rows", weil::io::to_json(L.rows())}};
}

// ---------------------------------------------------------------------------

int cmd_gauss(const RunConfig& rc)
{
  using namespace weil;
  const int p = rc.p, n = rc.n();
  const CycNum g = gauss_sum(p);
  const CycNum lhs = g.pow(2 * n);
  const CycNum rhs = CycNum::from_int(p, ipow(p, n) * legendre(n % 2 ? -1 : 1, p));
  const bool ok = lhs == rhs;
  json doc{{"kind", "gauss"},
           {"p", p},
           {"n", n},
           {"g1", io::to_json(g)},
           {"g1_text", g.to_string()},
           {"power", io::to_json(lhs)},
           {"power_text", lhs.to_string()},
           {"expected", io::to_json(rhs)},
           {"expected_text", rhs.to_string()},
           {"verdict", ok ? "PASS" : "FAIL"}};
  if (rc.floats())
    doc["g1_float"] = io::to_float_json(g);
  emit(rc, doc);
  return ok ? exit_pass : exit_fail;
}

int cmd_lagrangians(const RunConfig& rc, bool oriented)
{
  using namespace weil;
  const auto V = SymplecticSpace::standard(rc.p, rc.n());
  json entries = json::array();
  if (oriented)
    for (const auto& L : enumerate_oriented_lagrangians(V))
      entries.push_back(subspace_json(L));
  else
    for (const auto& L : enumerate_lagrangians(V))
      entries.push_back(subspace_json(L));
  const std::size_t count = entries.size();
  emit(rc, json{{"kind", "lagrangians"},
                {"p", rc.p},
                {"n", rc.n()},
                {"oriented", oriented},
                {"count", count},
                {"entries", std::move(entries)}});
  return exit_pass;
}

int cmd_intertwiner(const RunConfig& rc, const std::string& from, const std::string& to, bool check)
{
  using namespace weil;
  const auto V = SymplecticSpace::standard(rc.p, rc.n());
  const auto L = io::parse_oriented(from, rc.p, V.dim());
  const auto M = io::parse_oriented(to, rc.p, V.dim());
  const Intertwiner T = canonical_T(V, M, L, Method::closed_form);
  json doc = io::intertwiner_json(T, rc.floats());
  doc["target_basis"] = io::basis_json(T.target);
  bool ok = true;
  if (check) {
    const Intertwiner C = canonical_T(V, M, L, Method::chained);
    ok = C.mat == T.mat;
    doc["chained_matrix"] = io::to_json(C.mat);
    doc["check"] = json{{"equal", ok}, {"verdict", ok ? "PASS" : "FAIL"}};
  }
  emit(rc, doc);
  return ok ? exit_pass : exit_fail;
}

int cmd_kernel(const RunConfig& rc, const std::string& from, const std::string& to)
{
  using namespace weil;
  const auto V = SymplecticSpace::standard(rc.p, rc.n());
  const auto L = io::parse_oriented(from, rc.p, V.dim());
  const auto M = io::parse_oriented(to, rc.p, V.dim());
  const Kernel K = kernel_of(canonical_T(V, M, L, Method::closed_form));
  // K(v, z) = zeta^z K(v, 0); only z = 0 is listed.
  json values = json::array();
  for (const auto& v : fp::all_vectors(V.dim(), rc.p)) {
    const CycNum& k = K.at(HeisElement{v, 0});
    json e{{"v", v}, {"value", io::to_json(k)}};
    if (rc.floats())
      e["float_value"] = io::to_float_json(k);
    values.push_back(std::move(e));
  }
  emit(rc, json{{"kind", "kernel"},
                {"p", rc.p},
                {"n", rc.n()},
                {"source", L.to_string()},
                {"target", M.to_string()},
                {"values", std::move(values)}});
  return exit_pass;
}

int cmd_rep(const RunConfig& rc, const std::string& element, bool table)
{
  using namespace weil;
  const auto V = SymplecticSpace::standard(rc.p, rc.n());
  const CanonicalSpace C(V);
  if (table) {
    if (V.dim() != 2)
      throw UsageError("rep --table is only available for --dim 2");
    json entries = json::array();
    for (const auto& g : enumerate_sp(V)) {
      const WeilMatrix w = weil_rep(C, g);
      json e{{"g", io::to_json(g.mat())}, {"matrix", io::to_json(w.mat)}};
      if (rc.floats())
        e["float_matrix"] = io::to_float_json(w.mat);
      entries.push_back(std::move(e));
    }
    const std::size_t count = entries.size();
    emit(rc, json{{"kind", "rep_table"},
                  {"p", rc.p},
                  {"n", rc.n()},
                  {"base", C.base().to_string()},
                  {"basis", io::basis_json(C.base_model())},
                  {"count", count},
                  {"entries", std::move(entries)}});
    return exit_pass;
  }
  if (element.empty())
    throw UsageError("rep needs --element or --table");
  const SpElement g = io::parse_sp(element, V);
  emit(rc, io::weil_json(C, weil_rep(C, g), rc.floats()));
  return exit_pass;
}

int cmd_reduce(const RunConfig& rc, const std::string& isotropic)
{
  using namespace weil;
  const auto V = SymplecticSpace::standard(rc.p, rc.n());
  const OrientedSubspace I = io::parse_oriented(isotropic, rc.p, V.dim());
  if (!is_isotropic(V, I.sub))
    throw io::ParseError("--isotropic: subspace " + I.to_string() + " is not isotropic");
  const SymplecticReduction red(V, I);
  const CanonicalSpace C(V);
  const CanonicalSpace CR(red.reduced());
  const CycMatrix inv = invariant_subspace(C, I.sub);
  const CycMatrix alpha = reduction_alpha(C, red, CR);
  const CycMatrix restricted = alpha * inv;
  const std::size_t expected = static_cast<std::size_t>(ipow(rc.p, rc.n() - I.dim()));
  const std::size_t rk = restricted.rank();
  const bool ok = inv.cols() == expected && rk == expected;
  json doc{{"kind", "reduction"},
           {"p", rc.p},
           {"n", rc.n()},
           {"isotropic", I.to_string()},
           {"perp", subspace_json(red.perp_space())},
           {"complement", io::to_json(red.complement())},
           {"reduced_gram", io::to_json(red.reduced().gram())},
           {"invariant_dimension", inv.cols()},
           {"expected_dimension", expected},
           {"invariant_basis", io::to_json(inv)},
           {"alpha", io::to_json(alpha)},
           {"alpha_rank_on_invariants", rk},
           {"verdict", ok ? "PASS" : "FAIL"}};
  if (rc.floats())
    doc["float_alpha"] = io::to_float_json(alpha);
  emit(rc, doc);
  return ok ? exit_pass : exit_fail;
}

int cmd_pair(const RunConfig& rc)
{
  using namespace weil;
  const auto V = SymplecticSpace::standard(rc.p, rc.n());
  const CanonicalSpace C(V);
  const CanonicalSpace bar = dual_canonical(C);
  const CycMatrix G = duality_gram(bar, C, C.base());
  const std::size_t rk = G.rank();
  const bool ok = rk == C.dim();
  json doc{{"kind", "pairing"},
           {"p", rc.p},
           {"n", rc.n()},
           {"base", C.base().to_string()},
           {"basis", io::basis_json(C.base_model())},
           {"gram", io::to_json(G)},
           {"rank", rk},
           {"nondegenerate", ok},
           {"verdict", ok ? "PASS" : "FAIL"}};
  if (rc.floats())
    doc["float_gram"] = io::to_float_json(G);
  emit(rc, doc);
  return ok ? exit_pass : exit_fail;
}

weil::verify::SuiteConfig suite_config(const RunConfig& rc)
{
  return {rc.p, rc.n(), rc.seed, rc.samples};
}

int cmd_tensor(const RunConfig& rc)
{
  const auto res = weil::verify::suite_tensor(suite_config(rc));
  json doc{{"kind", "tensor"}, {"p", rc.p}, {"n1", 1}, {"n2", rc.n()}, {"seed", rc.seed}, {"passed", res.passed()},
           {"report", res.to_json()}};
  emit(rc, doc);
  return res.passed() ? exit_pass : exit_fail;
}

int cmd_verify(const RunConfig& rc, const std::string& suite)
{
  bool passed = false;
  const json doc = weil::verify::run_report(suite, suite_config(rc), &passed);
  emit(rc, doc);
  return passed ? exit_pass : exit_fail;
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Weil representation toolkit over F_p"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig rc;
  app.add_option("--p", rc.p, "odd prime p <= 7")->capture_default_str();
  app.add_option("--dim", rc.dim, "dimension 2n of V (2 or 4)")->capture_default_str();
  app.add_option("--seed", rc.seed, "seed for sampled checks")->capture_default_str();
  app.add_option("--samples", rc.samples, "sample count (0: suite default)")->capture_default_str();
  app.add_option("--format", rc.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "float"}))
      ->capture_default_str();
  app.add_option("--out", rc.out, "output path (default: standard output)");

  auto* gauss = app.add_subcommand("gauss", "Gauss sum and the identity G^(2n) = p^n (-1|p)^n");

  bool oriented = false;
  auto* lags = app.add_subcommand("lagrangians", "enumerate Lagrangians");
  lags->add_flag("--oriented", oriented, "list oriented Lagrangians");

  std::string from, to;
  bool check = false;
  auto* inter = app.add_subcommand("intertwiner", "canonical operator between two models");
  inter->add_option("--from", from, "source, e.g. rows=1,0|o=1")->required();
  inter->add_option("--to", to, "target, e.g. rows=0,1|o=1")->required();
  inter->add_flag("--check", check, "compare with the chained construction");

  auto* kern = app.add_subcommand("kernel", "kernel of the canonical operator");
  kern->add_option("--from", from, "source oriented Lagrangian")->required();
  kern->add_option("--to", to, "target oriented Lagrangian")->required();

  std::string element;
  bool table = false;
  auto* rep = app.add_subcommand("rep", "matrix of the Weil representation");
  rep->add_option("--element", element, "group element, e.g. g=0,1;2,0");
  rep->add_flag("--table", table, "every element of Sp(V) (dim 2 only)");

  std::string isotropic;
  auto* reduce = app.add_subcommand("reduce", "symplectic reduction by an isotropic subspace");
  reduce->add_option("--isotropic", isotropic, "oriented isotropic subspace")->required();

  auto* tensor = app.add_subcommand("tensor", "product compatibility report");
  auto* pair = app.add_subcommand("pair", "duality Gram matrix");

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::vector<std::string> suites = weil::verify::suite_names();
  suites.push_back("all");
  verify->add_option("--suite", suite, "suite name")->check(CLI::IsMember(suites))->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  try {
    validate(rc);
    if (*gauss)
      return cmd_gauss(rc);
    if (*lags)
      return cmd_lagrangians(rc, oriented);
    if (*inter)
      return cmd_intertwiner(rc, from, to, check);
    if (*kern)
      return cmd_kernel(rc, from, to);
    if (*rep)
      return cmd_rep(rc, element, table);
    if (*reduce)
      return cmd_reduce(rc, isotropic);
    if (*tensor)
      return cmd_tensor(rc);
    if (*pair)
      return cmd_pair(rc);
    if (*verify)
      return cmd_verify(rc, suite);
  } catch (const weil::ScaleGuardError& e) {
    std::cerr << "scale guard: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return exit_usage;
  }
  return exit_usage;
}
