#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "kmr/serialize.hpp"
#include "kmr/zeta.hpp"

namespace kmr::cli {

namespace {

struct WindowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

int max_grade(const LieElt& x) {
  int m = 0;
  for (const auto& [key, c] : x.terms())
    if (key.kind == LieKey::J) m = std::max(m, std::abs(key.idx.n));
  return m;
}

LieElt parse_gen(const LoopAlgebra& g, const std::string& s) {
  try {
    return g.parse(s);
  } catch (const AlgebraError& e) {
    throw UsageError(e.what());
  }
}

std::vector<std::string> chevalley_names(const AffineData& ad) {
  std::vector<std::string> out;
  for (int i = 1; i <= ad.rank; ++i) out.push_back("e" + std::to_string(i));
  out.push_back("e0");
  out.push_back("f0");
  for (int i = 1; i <= ad.rank; ++i) out.push_back("f" + std::to_string(i));
  return out;
}

void need_window(const RunConfig& c, int min_cutoff) {
  if (c.cutoff < min_cutoff)
    throw WindowError("insufficient window: cutoff " + std::to_string(c.cutoff) + " below " + std::to_string(min_cutoff));
  if (c.cutoff < c.grade + 2)
    throw WindowError("insufficient window: cutoff " + std::to_string(c.cutoff) + " must be at least grade + 2 = " +
                      std::to_string(c.grade + 2));
}

Gauge gauge_of(const RunConfig& c) { return c.gauge == "none" ? Gauge::None : Gauge::ChevalleySerre; }

// solve and insist on a unique answer
PhiMap solved_phi(const Splitting& sp, const RunConfig& c, SolveReport* report = nullptr) {
  if (c.zero_phi) return {};
  SolveReport r;
  try {
    r = sp.solve_phi(gauge_of(c));
  } catch (const InconsistentSystem& e) {
    throw WindowError(std::string("insufficient window: ") + e.what());
  }
  if (!r.free.empty())
    throw WindowError("insufficient window: " + std::to_string(r.free.size()) + " coefficients of phi left undetermined");
  if (report) *report = r;
  return r.phi;
}

// drop beta keys outside the exact range of theta(x)
D1State exact_part(const D1State& s, int bound) {
  D1State out = s;
  for (auto it = out.beta.begin(); it != out.beta.end();) it = std::abs(it->first.n) > bound ? out.beta.erase(it) : std::next(it);
  return out;
}

std::string field_text(const AffineData& ad, const VectorField& v) {
  std::string s;
  for (const auto& [x, p] : v.coeffs) s += "  D_{" + genidx_str(ad, x) + "}: " + render(ad, p) + "\n";
  return s;
}

std::string quad_text(const AffineData& ad, const std::vector<QuadTerm>& v) {
  std::string s;
  for (const QuadTerm& t : v)
    s += " " + q_str(t.coeff) + "*X^i*" + render_var(ad, t.var) + "*D_{" + genidx_str(ad, t.key) + "}";
  return s.empty() ? " (none)" : s;
}

std::string header(const std::string& name, const RunConfig& c) {
  return name + " " + c.algebra + " cutoff " + std::to_string(c.cutoff) + " grade " + std::to_string(c.grade) + "\n";
}

}  // namespace

std::pair<std::string, std::string> split_pair(const std::string& s) {
  auto p = s.find(':');
  if (p == std::string::npos || p == 0 || p + 1 == s.size()) throw UsageError("pair '" + s + "' must look like x:y");
  return {s.substr(0, p), s.substr(p + 1)};
}

Result expand_rho(const RunConfig& c) {
  if (c.cutoff < 1) throw WindowError("insufficient window: cutoff must be >= 1");
  LoopAlgebra g(build_affine_data(c.algebra));
  const AffineData& ad = g.data();
  Realization R(g, c.cutoff, c.depth);
  std::vector<std::string> names = c.generators.empty() ? chevalley_names(ad) : c.generators;
  std::string text = "expand-rho " + c.algebra + " cutoff " + std::to_string(c.cutoff) + "\n";
  Json images = Json::array();
  for (const std::string& name : names) {
    LieElt A = parse_gen(g, name);
    VectorField v = R.rho(A);
    text += "rho(" + name + ") = rho(" + g.render(A) + ")\n" + field_text(ad, v);
    Json e{{"generator", name}, {"element", g.render(A)}, {"field", to_json(ad, v)}};
    if (c.gap && A.terms().size() == 1 && A.terms().begin()->first.kind == LieKey::J) {
      const GenIdx x = A.terms().begin()->first.idx;
      GapReport gr = widening_gap_audit(R.rplus(x.label, x.n), *c.gap);
      text += "  gap K=" + std::to_string(*c.gap) + ": pass " + std::to_string(gr.pass.size()) + " violations " +
              std::to_string(gr.violations.size()) + " B(K)=" + std::to_string(gr.max_violating_grade) + "\n";
      e["gap"] = {{"K", *c.gap}, {"pass", gr.pass.size()}, {"violations", gr.violations.size()}, {"B", gr.max_violating_grade}};
    }
    images.push_back(std::move(e));
  }
  Result r;
  r.out = c.json ? dump({{"algebra", ad.tag}, {"cutoff", c.cutoff}, {"images", images}}) : text;
  return r;
}

Result expand_theta(const RunConfig& c) {
  need_window(c, 2);
  LoopAlgebra g(build_affine_data(c.algebra));
  const AffineData& ad = g.data();
  Splitting sp(g, c.cutoff, c.grade);
  PhiMap phi = solved_phi(sp, c);
  std::vector<std::string> names = c.generators.empty() ? chevalley_names(ad) : c.generators;
  std::string text = header("expand-theta", c);
  Json images = Json::array();
  for (const std::string& name : names) {
    LieElt x = parse_gen(g, name);
    if (max_grade(x) > c.grade) throw UsageError("generator " + name + " lies outside the window |n| <= " + std::to_string(c.grade));
    D1State t = exact_part(sp.theta(x, phi), c.cutoff - 1 - max_grade(x));
    text += "theta(" + name + ") = " + render(ad, t, c.unicode) + "\n";
    images.push_back({{"generator", name}, {"element", g.render(x)}, {"state", to_json(ad, t)}});
  }
  Result r;
  r.out = c.json ? dump({{"algebra", ad.tag}, {"cutoff", c.cutoff}, {"grade", c.grade}, {"images", images}}) : text;
  return r;
}

Result solve_phi(const RunConfig& c) {
  need_window(c, 2);
  LoopAlgebra g(build_affine_data(c.algebra));
  const AffineData& ad = g.data();
  Splitting sp(g, c.cutoff, c.grade);
  SolveReport rep;
  try {
    rep = sp.solve_phi(gauge_of(c));
  } catch (const InconsistentSystem& e) {
    throw WindowError(std::string("insufficient window: ") + e.what());
  }
  Result r;
  std::string text = header("solve-phi", c) + "gauge " + c.gauge + "\n";
  text += "unknowns " + std::to_string(rep.unknowns.size()) + " rows " + std::to_string(rep.rows) + " rank " +
          std::to_string(rep.rank) + " free " + std::to_string(rep.free.size()) + "\n";
  for (const auto& [x, w] : rep.phi)
    if (ad.in_minus(x)) text += "phi(" + g.render(LieElt::j(x.label, x.n)) + ") = " + render(ad, w) + "\n";
  for (const Unknown& u : rep.free)
    text += "undetermined: " + g.render(LieElt::j(u.x.label, u.x.n)) + " " + render_monomial(ad, u.m) + " dX^{" +
            genidx_str(ad, u.c) + "}\n";
  if (!rep.free.empty()) {
    r.code = kInsufficientWindow;
    r.err = "insufficient window: phi is not determined by the rows in this window\n";
  }
  Json j = to_json(g, rep);
  j["algebra"] = ad.tag;
  j["cutoff"] = c.cutoff;
  j["grade"] = c.grade;
  r.out = c.json ? dump(j) : text;
  return r;
}

Result verify_hom(const RunConfig& c) {
  need_window(c, 2);
  LoopAlgebra g(build_affine_data(c.algebra));
  const AffineData& ad = g.data();
  Splitting sp(g, c.cutoff, c.grade);
  SolveReport solved;
  PhiMap phi = solved_phi(sp, c, &solved);
  SplittingReport rep = sp.verify(phi);
  bool theta_k = sp.theta(LieKey::k(), phi).is_zero();
  CReport cr = c_coefficients(g, std::max(c.cutoff, 4));

  Result r;
  r.code = rep.ok() && theta_k ? kOk : kResiduals;
  std::string text = header("verify-hom", c);
  text += c.zero_phi ? "phi forced to zero\n"
                     : "phi solved: unknowns " + std::to_string(solved.unknowns.size()) + " rank " + std::to_string(solved.rank) + "\n";
  text += std::string("theta(k) = 0: ") + (theta_k ? "yes" : "no") + "\n";
  text += "pairs checked " + std::to_string(rep.pairs_checked) + " skipped " + std::to_string(rep.pairs_skipped) +
          " failures " + std::to_string(rep.failures.size()) + "\n";
  for (const PairResidual& p : rep.failures)
    text += "  residual " + g.render(LieElt(p.x)) + " , " + g.render(LieElt(p.y)) + ": (0) " + render(ad, p.zero, c.unicode) +
            " | (1) " + render(ad, p.first) + "\n";
  for (const auto& [i, v] : cr.extracted)
    text += "c_" + std::to_string(i) + " extracted " + q_str(v) + " formula " + q_str(cr.formula.at(i)) + "\n";
  Json j{{"algebra", ad.tag}, {"cutoff", c.cutoff}, {"grade", c.grade}, {"zero_phi", c.zero_phi},
         {"theta_k_zero", theta_k}, {"report", to_json(g, rep)}, {"c", to_json(ad, cr)}};
  if (c.regulator && !c.zero_phi) {
    Json rows = Json::array();
    for (const auto& [x, y] : default_zeta_pairs(g)) {
      if (max_grade(x) > c.grade || max_grade(y) > c.grade) continue;
      ZetaRow row = zeta_row(g, phi, x, y, c.terms);
      text += "regulated " + g.render(x) + " , " + g.render(y) + ": " + row.series.str() + "\n";
      rows.push_back(to_json(g, row));
    }
    j["regulated"] = rows;
  }
  text += std::string("status: ") + (r.code == kOk ? "ok" : "residuals") + "\n";
  r.out = c.json ? dump(j) : text;
  return r;
}

Result c_coeffs(const RunConfig& c) {
  if (c.cutoff < 3) throw WindowError("insufficient window: c-coeffs needs cutoff >= 3");
  LoopAlgebra g(build_affine_data(c.algebra));
  const AffineData& ad = g.data();
  CReport cr = c_coefficients(g, c.cutoff);
  Result r;
  r.code = cr.ok() ? kOk : kResiduals;
  std::string text = "c-coeffs " + c.algebra + " cutoff " + std::to_string(c.cutoff) + "\n";
  for (const auto& [i, v] : cr.extracted) {
    const Q& f = cr.formula.at(i);
    text += "c_" + std::to_string(i) + " extracted " + q_str(v) + " formula " + q_str(f) + (v == f ? " match" : " MISMATCH") + "\n";
  }
  for (const auto& [i, v] : cr.inventory) {
    text += "rho(f" + std::to_string(i) + ") found:" + quad_text(ad, v) + "\n";
    text += "rho(f" + std::to_string(i) + ") predicted:" + quad_text(ad, cr.expected.at(i)) + "\n";
  }
  text += std::string("status: ") + (cr.ok() ? "ok" : "mismatch") + "\n";
  Json j = to_json(ad, cr);
  j["algebra"] = ad.tag;
  r.out = c.json ? dump(j) : text;
  return r;
}

Result zeta_check(const RunConfig& c) {
  LoopAlgebra g(build_affine_data(c.algebra));
  std::vector<std::pair<LieElt, LieElt>> pairs;
  if (c.default_pairs) pairs = default_zeta_pairs(g);
  for (const std::string& s : c.pairs) {
    auto [a, b] = split_pair(s);
    pairs.emplace_back(parse_gen(g, a), parse_gen(g, b));
  }
  Result r;
  if (pairs.empty()) {
    r.out = c.json ? dump({{"algebra", g.data().tag}, {"rows", Json::array()}}) : "zeta-check " + c.algebra + ": no pairs\n";
    return r;
  }
  int need = 0;
  for (const auto& [x, y] : pairs) need = std::max({need, max_grade(x), max_grade(y)});
  if (need > c.grade) throw WindowError("insufficient window: pairs reach grade " + std::to_string(need) + " > " + std::to_string(c.grade));
  need_window(c, 2);
  Splitting sp(g, c.cutoff, c.grade);
  PhiMap phi = solved_phi(sp, c);
  std::string text = header("zeta-check", c) + "terms " + std::to_string(c.terms) + "\n";
  Json rows = Json::array();
  for (const auto& [x, y] : pairs) {
    ZetaRow row = zeta_row(g, phi, x, y, c.terms);
    text += g.render(x) + " , " + g.render(y) + "\n";
    text += "  series   " + row.series.str() + "\n";
    text += "  rational " + (row.series.reconstructed ? row.series.reconstructed->str() : std::string("none")) + "\n";
    text += "  constant " + q_str(row.constant) + (row.constant == 0 ? "" : "  [flag: nonzero]") + "\n";
    rows.push_back(to_json(g, row));
  }
  r.out = c.json ? dump({{"algebra", g.data().tag}, {"terms", c.terms}, {"rows", rows}}) : text;
  return r;
}

Result stabilize_check(const RunConfig& c) {
  need_window(c, 2);
  LoopAlgebra g(build_affine_data(c.algebra));
  const AffineData& ad = g.data();
  Splitting sp(g, c.cutoff, c.grade);
  PhiMap phi = solved_phi(sp, c);
  std::mt19937_64 rng(c.seed);
  Result r;
  std::string text = header("stabilize-check", c);
  Json rows = Json::array();
  int bad = 0;
  for (const LieKey& x : sp.generators()) {
    if (x.kind == LieKey::J && std::abs(x.idx.n) > std::min(c.grade, 1)) continue;
    LieElt X(x);
    StabilizeReport ring = check_stabilizes(g, sp.uprho(X), c.cutoff - 1, c.samples, rng);
    StabilityReport plus = sp.lpg_stabilize(x, phi, Side::Plus, c.samples, rng);
    StabilityReport minus = sp.lpg_stabilize(x, phi, Side::Minus, c.samples, rng);
    bool ok = ring.ok && plus.ok() && minus.ok();
    bad += !ok;
    auto mark = [](bool b) { return b ? "ok" : "ESCAPE"; };
    text += g.render(X) + "  ring " + mark(ring.ok) + "  plus " + mark(plus.ok()) + "  minus " + mark(minus.ok()) + "\n";
    for (const auto& e : ring.escapes) text += "    " + e + "\n";
    for (const auto& e : plus.escapes) text += "    " + e + "\n";
    for (const auto& e : minus.escapes) text += "    " + e + "\n";
    rows.push_back({{"generator", g.render(X)}, {"ring", ring.ok}, {"plus", plus.ok()}, {"minus", minus.ok()},
                    {"escapes", ring.escapes.size() + plus.escapes.size() + minus.escapes.size()}});
  }
  r.code = bad ? kResiduals : kOk;
  text += std::string("status: ") + (bad ? "escapes" : "ok") + "\n";
  r.out = c.json ? dump({{"algebra", ad.tag}, {"cutoff", c.cutoff}, {"grade", c.grade}, {"rows", rows}}) : text;
  return r;
}

Result dispatch(const std::string& sub, const RunConfig& c) {
  try {
    if (sub == "expand-rho") return expand_rho(c);
    if (sub == "expand-theta") return expand_theta(c);
    if (sub == "solve-phi") return solve_phi(c);
    if (sub == "verify-hom") return verify_hom(c);
    if (sub == "c-coeffs") return c_coeffs(c);
    if (sub == "zeta-check") return zeta_check(c);
    if (sub == "stabilize-check") return stabilize_check(c);
    return {kUsage, "", "unknown subcommand " + sub + "\n"};
  } catch (const WindowError& e) {
    Result r{kInsufficientWindow, "", std::string(e.what()) + "\n"};
    if (c.json) r.out = dump({{"error", "insufficient window"}, {"detail", e.what()}});
    return r;
  } catch (const TruncationError& e) {
    Result r{kInsufficientWindow, "", std::string("insufficient window: ") + e.what() + "\n"};
    if (c.json) r.out = dump({{"error", "insufficient window"}, {"detail", e.what()}});
    return r;
  } catch (const UsageError& e) {
    return {kUsage, "", std::string(e.what()) + "\n"};
  } catch (const AlgebraError& e) {
    return {kUsage, "", std::string(e.what()) + "\n"};
  }
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"kmr: free-field realizations of untwisted affine Kac-Moody algebras"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "TOML/INI file with option defaults; flags override it");

  RunConfig c;
  int gap = 0;
  std::string golden, out_dir;
  bool write_golden = false, no_defaults = false;
  app.add_option("--algebra", c.algebra, "series tag, e.g. A1~ A2~ D4~")->capture_default_str();
  app.add_option("--cutoff", c.cutoff, "cutoff k on t-grades")->capture_default_str();
  app.add_option("--grade", c.grade, "generator window |n| <= grade")->capture_default_str();
  app.add_option("--gap", gap, "K for the widening-gap audit")->check(CLI::PositiveNumber);
  app.add_option("--depth", c.depth, "cap on polynomial degree in expansions");
  app.add_flag("--regulator", c.regulator, "include regulated 1st products");
  app.add_option("--gauge", c.gauge, "gauge rows for solve-phi")->check(CLI::IsMember({"cs", "none"}))->capture_default_str();
  app.add_flag("--json", c.json, "emit JSON");
  app.add_flag("--unicode", c.unicode, "Greek letters in state output");
  app.add_option("--golden", golden, "compare output with <dir>/<subcommand>.txt|.json");
  app.add_flag("--write-golden", write_golden, "write the golden file instead of comparing");
  app.add_option("--out-dir", out_dir, "also write output to this directory")->envname("KMR_OUT_DIR");

  std::vector<CLI::App*> subs;
  auto* rho = app.add_subcommand("expand-rho", "coordinate flow rho(x) on the cutoff window");
  rho->add_option("--gen", c.generators, "generator, e.g. e1 f0 H,1 J(E,-1)");
  auto* th = app.add_subcommand("expand-theta", "theta(x) with the solved splitting");
  th->add_option("--gen", c.generators, "generator");
  auto* sp = app.add_subcommand("solve-phi", "solve for the splitting one-form");
  auto* vh = app.add_subcommand("verify-hom", "check the 0th and 1st products on the safe window");
  vh->add_flag("--zero-phi", c.zero_phi, "force phi = 0");
  vh->add_option("--terms", c.terms, "regulated series length")->check(CLI::PositiveNumber);
  auto* cc = app.add_subcommand("c-coeffs", "c_i from the double contraction and the quadratic terms of rho(f_i)");
  auto* zc = app.add_subcommand("zeta-check", "regulated 1st products and their constant terms");
  zc->add_option("--pair", c.pairs, "extra pair x:y, e.g. H,1:H,-1");
  zc->add_flag("--no-defaults", no_defaults, "skip the built-in pairs");
  zc->add_option("--terms", c.terms, "series length")->check(CLI::PositiveNumber)->capture_default_str();
  auto* st = app.add_subcommand("stabilize-check", "stabilization of the plus and minus subspaces");
  st->add_option("--samples", c.samples)->check(CLI::PositiveNumber)->capture_default_str();
  st->add_option("--seed", c.seed)->capture_default_str();
  subs = {rho, th, sp, vh, cc, zc, st};

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  if (gap > 0) c.gap = gap;
  c.default_pairs = !no_defaults;

  std::string name;
  for (CLI::App* s : subs)
    if (s->parsed()) name = s->get_name();

  Result r = dispatch(name, c);
  out << r.out;
  err << r.err;

  const std::string file = name + (c.json ? ".json" : ".txt");
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    std::ofstream(std::filesystem::path(out_dir) / file) << r.out;
  }
  if (!golden.empty()) {
    std::filesystem::path p = std::filesystem::path(golden) / file;
    if (write_golden) {
      std::filesystem::create_directories(golden);
      std::ofstream(p) << r.out;
    } else {
      std::ifstream in(p);
      if (!in) {
        err << "golden file " << p.string() << " not found\n";
        return kUsage;
      }
      std::string want((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
      if (want != r.out) {
        std::istringstream a(want), b(r.out);
        std::string la, lb;
        int line = 1;
        while (true) {
          bool ga = static_cast<bool>(std::getline(a, la)), gb = static_cast<bool>(std::getline(b, lb));
          if (!ga && !gb) break;
          if (!ga || !gb || la != lb) {
            err << "golden mismatch in " << p.string() << " at line " << line << "\n  want: " << (ga ? la : "<eof>")
                << "\n  got:  " << (gb ? lb : "<eof>") << "\n";
            break;
          }
          ++line;
        }
        return r.code == kOk ? kResiduals : r.code;
      }
    }
  }
  return r.code;
}

}  // namespace kmr::cli
