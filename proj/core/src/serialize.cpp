#include "kmr/serialize.hpp"

#include <stdexcept>

namespace kmr {

namespace {

Json var_factor(const AffineData& ad, const char* kind, const GenIdx& x) {
  return Json{{"kind", kind}, {"label", ad.name(x.label)}, {"n", x.n}};
}

Json monomial_factors(const AffineData& ad, const Monomial& m) {
  Json f = Json::array();
  for (const VarPow& vp : m.factors()) {
    Json x = var_factor(ad, "X", var_idx(vp.var));
    x["exp"] = vp.exp;
    f.push_back(std::move(x));
  }
  return f;
}

Monomial monomial_from(const AffineData& ad, const Json& factors, const char* stop_kind, GenIdx* stop) {
  Poly p(1);
  for (const Json& f : factors) {
    std::string kind = f.at("kind").get<std::string>();
    GenIdx x{ad.label_of(f.at("label").get<std::string>()), f.at("n").get<int>()};
    if (kind == "X") {
      Poly v = Poly::var(x);
      for (int e = 0; e < f.value("exp", 1); ++e) p = p * v;
    } else if (stop_kind && kind == stop_kind) {
      *stop = x;
    } else {
      throw std::invalid_argument("unexpected factor kind '" + kind + "'");
    }
  }
  return p.terms().begin()->first;
}

template <class Family>
Json family_json(const AffineData& ad, const Family& fam, const char* kind) {
  Json out = Json::array();
  for (const auto& [c, p] : fam)
    for (const auto& [m, q] : p.terms()) {
      Json f = monomial_factors(ad, m);
      f.push_back(var_factor(ad, kind, c));
      out.push_back({{"coeff", q_str(q)}, {"factors", std::move(f)}});
    }
  return out;
}

PolyFamily family_from(const AffineData& ad, const Json& j, const char* kind) {
  PolyFamily out;
  for (const Json& t : j) {
    GenIdx c{-1, 0};
    Monomial m = monomial_from(ad, t.at("factors"), kind, &c);
    if (c.label < 0) throw std::invalid_argument(std::string("term without a '") + kind + "' factor");
    out[c].add(m, q_parse(t.at("coeff").get<std::string>()));
  }
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

const char* sym_kind(Sym::Kind k) {
  switch (k) {
    case Sym::S: return "S";
    case Sym::D: return "D";
    case Sym::Gamma: return "gamma";
    case Sym::Beta: return "beta";
    case Sym::B: return "b";
  }
  return "?";
}

Json sym_json(const AffineData& ad, const Sym& s) {
  Json f{{"kind", sym_kind(s.kind)}, {"mode", s.mode}};
  switch (s.kind) {
    case Sym::Gamma:
    case Sym::Beta:
      f["label"] = ad.name(s.a);
      f["n"] = s.n;
      break;
    case Sym::S:
      f["label"] = ad.name(s.a);
      f["lower"] = ad.name(s.b);
      f["n"] = s.n;
      break;
    case Sym::B:
      f["label"] = bfield_name(ad, s.a);
      f["index"] = s.a;
      break;
    case Sym::D:
      break;
  }
  return f;
}

Sym sym_from(const AffineData& ad, const Json& f) {
  std::string kind = f.at("kind").get<std::string>();
  int mode = f.at("mode").get<int>();
  if (kind == "gamma") return Sym::gamma({ad.label_of(f.at("label").get<std::string>()), f.at("n").get<int>()}, mode);
  if (kind == "beta") return Sym::beta({ad.label_of(f.at("label").get<std::string>()), f.at("n").get<int>()}, mode);
  if (kind == "S")
    return Sym::s(ad.label_of(f.at("label").get<std::string>()), ad.label_of(f.at("lower").get<std::string>()),
                  f.at("n").get<int>(), mode);
  if (kind == "D") return Sym::d(mode);
  if (kind == "b") return Sym::bfield(f.at("index").get<int>(), mode);
  throw std::invalid_argument("unknown state factor kind '" + kind + "'");
}

Json key_json(const LoopAlgebra& g, const LieKey& k) { return g.render(LieElt(k)); }

}  // namespace

Json to_json(const AffineData& ad, const Poly& p) {
  Json out = Json::array();
  for (const auto& [m, q] : p.terms()) out.push_back({{"coeff", q_str(q)}, {"factors", monomial_factors(ad, m)}});
  return out;
}

Json to_json(const AffineData& ad, const OneForm& w) { return family_json(ad, w.coeffs, "dX"); }
Json to_json(const AffineData& ad, const VectorField& v) { return family_json(ad, v.coeffs, "partial"); }

Json to_json(const AffineData& ad, const VAState& s) {
  Json out = Json::array();
  for (const auto& [w, c] : s.terms()) {
    Json f = Json::array();
    for (const Sym& x : w) f.push_back(sym_json(ad, x));
    for (int d = 0; d <= c.degree(); ++d) {
      if (c.at(d) == 0) continue;
      Json t{{"coeff", q_str(c.at(d))}, {"factors", f}};
      if (d > 0) t["z"] = d;
      out.push_back(std::move(t));
    }
  }
  return out;
}

Json to_json(const AffineData& ad, const D1State& s) { return to_json(ad, s.to_state()); }

Poly poly_from_json(const AffineData& ad, const Json& j) {
  Poly p;
  for (const Json& t : j) p.add(monomial_from(ad, t.at("factors"), nullptr, nullptr), q_parse(t.at("coeff").get<std::string>()));
  return p;
}

OneForm form_from_json(const AffineData& ad, const Json& j) {
  OneForm w;
  w.coeffs = family_from(ad, j, "dX");
  return w;
}

VectorField field_from_json(const AffineData& ad, const Json& j) {
  VectorField v;
  v.coeffs = family_from(ad, j, "partial");
  return v;
}

VAState state_from_json(const AffineData& ad, const Json& j) {
  VAState out;
  for (const Json& t : j) {
    Word w;
    for (const Json& f : t.at("factors")) w.push_back(sym_from(ad, f));
    out += VAState::of(w, ZPoly::monomial(t.value("z", 0), q_parse(t.at("coeff").get<std::string>())));
  }
  return out;
}

Json to_json(const LoopAlgebra& g, const SplittingReport& r) {
  const AffineData& ad = g.data();
  Json fails = Json::array();
  for (const PairResidual& p : r.failures)
    fails.push_back({{"x", key_json(g, p.x)}, {"y", key_json(g, p.y)}, {"zero", to_json(ad, p.zero)}, {"first", to_json(ad, p.first)}});
  return Json{{"pairs_checked", r.pairs_checked}, {"pairs_skipped", r.pairs_skipped}, {"ok", r.ok()}, {"failures", fails}};
}

Json to_json(const LoopAlgebra& g, const SolveReport& r) {
  const AffineData& ad = g.data();
  Json phi = Json::object();
  for (const auto& [x, w] : r.phi)
    if (ad.in_minus(x)) phi[g.render(LieElt::j(x.label, x.n))] = to_json(ad, w);
  Json blift = Json::object();
  for (const auto& [x, m] : r.blift) {
    Json e = Json::object();
    for (const auto& [j, p] : m) e[bfield_name(ad, j)] = to_json(ad, p);
    blift[g.render(LieElt::j(x.label, x.n))] = e;
  }
  Json fr = Json::array();
  for (const Unknown& u : r.free) {
    Json f{{"generator", g.render(LieElt::j(u.x.label, u.x.n))}, {"monomial", to_json(ad, Poly::monomial(u.m, 1))}};
    if (u.b >= 0)
      f["b"] = bfield_name(ad, u.b);
    else
      f["direction"] = genidx_str(ad, u.c);
    fr.push_back(std::move(f));
  }
  Json out{{"unknowns", r.unknowns.size()}, {"rows", r.rows}, {"rank", r.rank}, {"free", fr}, {"phi", phi}};
  if (!r.blift.empty()) out["b_terms"] = blift;
  return out;
}

Json to_json(const AffineData& ad, const CReport& r) {
  Json rows = Json::array();
  for (const auto& [i, c] : r.formula) {
    auto it = r.extracted.find(i);
    Json inv = Json::array(), exp = Json::array();
    auto terms = [&](const std::vector<QuadTerm>& v, Json& j) {
      for (const QuadTerm& t : v) j.push_back({{"key", genidx_str(ad, t.key)}, {"var", genidx_str(ad, t.var)}, {"coeff", q_str(t.coeff)}});
    };
    if (auto a = r.inventory.find(i); a != r.inventory.end()) terms(a->second, inv);
    if (auto a = r.expected.find(i); a != r.expected.end()) terms(a->second, exp);
    rows.push_back({{"i", i},
                    {"extracted", it == r.extracted.end() ? Json(nullptr) : Json(q_str(it->second))},
                    {"formula", q_str(c)},
                    {"quadratic_terms", inv},
                    {"predicted_terms", exp}});
  }
  return Json{{"ok", r.ok()}, {"c", rows}};
}

Json to_json(const LoopAlgebra& g, const ZetaRow& r) {
  Json coeffs = Json::array();
  for (const Q& c : r.series.coeffs) coeffs.push_back(q_str(c));
  Json out{{"x", g.render(r.x)}, {"y", g.render(r.y)}, {"series", coeffs}, {"constant", q_str(r.constant)},
           {"certificate", r.series.certificate}};
  if (r.series.reconstructed) {
    Json num = Json::array(), den = Json::array();
    for (const Q& c : r.series.reconstructed->num) num.push_back(q_str(c));
    for (const Q& c : r.series.reconstructed->den) den.push_back(q_str(c));
    out["rational"] = {{"num", num}, {"den", den}, {"text", r.series.reconstructed->str()}};
  }
  return out;
}

}  // namespace kmr
