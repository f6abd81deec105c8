#include "leeyang/json_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "leeyang/error.hpp"

namespace leeyang {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw FormatError(where + ": " + what); }

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing field \"") + key + "\"");
  return *it;
}

double number(const Json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(where, "non-finite number");
  return v;
}

int integer(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  const auto v = j.get<long long>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) fail(where, "integer out of range");
  return static_cast<int>(v);
}

const Json& array(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  return j;
}

std::string at(const std::string& where, const char* key) { return where + "." + key; }
std::string item(const std::string& where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }

ExponentVector exponents(const Json& j, const std::string& where) {
  array(j, where);
  ExponentVector e(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const int v = integer(j[i], item(where, i));
    if (v < 0) fail(item(where, i), "negative exponent");
    e[i] = v;
  }
  return e;
}

Json exponents_to_json(const ExponentVector& e) {
  Json out = Json::array();
  for (int v : e) out.push_back(v);
  return out;
}

template <class F>
auto wrap(const std::string& where, F&& f) {
  try {
    return f();
  } catch (const FormatError&) {
    throw;
  } catch (const Error& e) {
    fail(where, e.what());
  }
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw FormatError("malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  } catch (const Json::exception& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_json(ss.str());
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

Complex complex_from_json(const Json& j, const std::string& where) {
  if (j.is_number()) return number(j, where);
  if (j.is_array() && j.size() == 2) return {number(j[0], item(where, 0)), number(j[1], item(where, 1))};
  fail(where, "expected a number or [re, im]");
}

Json to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

MultiPoly poly_from_json(const Json& j, const std::string& where) {
  const int n = integer(field(j, "nvars", where), at(where, "nvars"));
  const Json& terms = array(field(j, "terms", where), at(where, "terms"));
  MultiPoly::TermMap t;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const std::string w = item(at(where, "terms"), k);
    ExponentVector e = exponents(field(terms[k], "exp", w), at(w, "exp"));
    if (static_cast<int>(e.size()) != n) fail(at(w, "exp"), "length differs from nvars");
    const Complex c = complex_from_json(field(terms[k], "coef", w), at(w, "coef"));
    if (t.contains(e)) fail(at(w, "exp"), "duplicate exponent");
    t.emplace(std::move(e), c);
  }
  return wrap(where, [&] { return MultiPoly(n, std::move(t)); });
}

Json to_json(const MultiPoly& f) {
  Json terms = Json::array();
  for (const auto& [e, c] : f.terms()) {
    Json term;
    term["exp"] = exponents_to_json(e);
    term["coef"] = to_json(c);
    terms.push_back(std::move(term));
  }
  Json out;
  out["nvars"] = f.nvars();
  out["terms"] = std::move(terms);
  return out;
}

CircularDomain domain_from_json(const Json& j, const std::string& where) {
  if (!field(j, "kind", where).is_string()) fail(at(where, "kind"), "expected a string");
  const auto kind = j["kind"].get<std::string>();
  return wrap(where, [&]() -> CircularDomain {
    if (kind == "half_plane") {
      const double theta = j.contains("theta") ? number(j["theta"], at(where, "theta")) : 0.0;
      const Complex offset = j.contains("offset") ? complex_from_json(j["offset"], at(where, "offset")) : 0.0;
      return HalfPlane{theta, offset};
    }
    if (kind == "disc" || kind == "disc_exterior") {
      const Complex center = j.contains("center") ? complex_from_json(j["center"], at(where, "center")) : 0.0;
      const double radius = j.contains("radius") ? number(j["radius"], at(where, "radius")) : 1.0;
      if (kind == "disc") return Disc{center, radius};
      return DiscExterior{center, radius};
    }
    fail(at(where, "kind"), "unknown domain kind \"" + kind + "\"");
  });
}

Json to_json(const CircularDomain& d) {
  Json out;
  if (const auto* h = std::get_if<HalfPlane>(&d.shape())) {
    out["kind"] = "half_plane";
    out["theta"] = h->theta;
    out["offset"] = to_json(h->offset);
  } else if (const auto* c = std::get_if<Disc>(&d.shape())) {
    out["kind"] = "disc";
    out["center"] = to_json(c->center);
    out["radius"] = c->radius;
  } else {
    const auto& x = std::get<DiscExterior>(d.shape());
    out["kind"] = "disc_exterior";
    out["center"] = to_json(x.center);
    out["radius"] = x.radius;
  }
  return out;
}

namespace {

LinearOperator builtin_from_json(const Json& j, const std::string& where) {
  const auto name = j["builtin"].get<std::string>();
  auto kappa = [&] { return exponents(field(j, "kappa", where), at(where, "kappa")); };
  auto idx = [&](const char* key) { return integer(field(j, key, where), at(where, key)); };
  return wrap(where, [&]() -> LinearOperator {
    if (name == "identity") return builtin_identity(kappa());
    if (name == "partial") return builtin_partial(idx("var"), kappa());
    if (name == "scaling") {
      return builtin_scaling(complex_from_json(field(j, "factor", where), at(where, "factor")), kappa());
    }
    if (name == "asano") return builtin_asano(idx("i"), idx("j"), kappa());
    if (name == "map") return builtin_map_operator(kappa());
    if (name == "lee_yang_edge") {
      return builtin_lee_yang_edge(idx("i"), idx("j"), number(field(j, "J", where), at(where, "J")), kappa());
    }
    if (name == "hadamard_schur") return builtin_hadamard_schur(poly_from_json(field(j, "g", where), at(where, "g")));
    if (name == "lieb_sokal_operator") return builtin_lieb_sokal_operator(idx("n"), idx("cap"));
    if (name == "rank_one") {
      std::map<ExponentVector, Complex> functional;
      const Json& fj = array(field(j, "functional", where), at(where, "functional"));
      for (std::size_t k = 0; k < fj.size(); ++k) {
        const std::string w = item(at(where, "functional"), k);
        auto e = exponents(field(fj[k], "exp", w), at(w, "exp"));
        if (functional.contains(e)) fail(at(w, "exp"), "duplicate exponent");
        functional.emplace(std::move(e), complex_from_json(field(fj[k], "coef", w), at(w, "coef")));
      }
      return builtin_rank_one(kappa(), functional, poly_from_json(field(j, "p", where), at(where, "p")));
    }
    fail(at(where, "builtin"), "unknown builtin \"" + name + "\"");
  });
}

}  // namespace

LinearOperator operator_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  if (j.contains("builtin")) {
    if (!j["builtin"].is_string()) fail(at(where, "builtin"), "expected a string");
    return builtin_from_json(j, where);
  }
  ExponentVector kappa = exponents(field(j, "kappa", where), at(where, "kappa"));
  const int nout = j.contains("nvars_out") ? integer(j["nvars_out"], at(where, "nvars_out"))
                                           : static_cast<int>(kappa.size());
  std::string name;
  if (j.contains("name")) {
    if (!j["name"].is_string()) fail(at(where, "name"), "expected a string");
    name = j["name"].get<std::string>();
  }
  const Json& action = array(field(j, "action", where), at(where, "action"));
  LinearOperator::ActionTable table;
  for (std::size_t k = 0; k < action.size(); ++k) {
    const std::string w = item(at(where, "action"), k);
    auto e = exponents(field(action[k], "alpha", w), at(w, "alpha"));
    if (table.contains(e)) fail(at(w, "alpha"), "duplicate exponent");
    table.emplace(std::move(e), poly_from_json(field(action[k], "image", w), at(w, "image")));
  }
  return wrap(where, [&] { return LinearOperator(std::move(kappa), nout, std::move(table), std::move(name)); });
}

Json to_json(const LinearOperator& t) {
  Json action = Json::array();
  for (const auto& [e, img] : t.action()) {
    Json entry;
    entry["alpha"] = exponents_to_json(e);
    entry["image"] = to_json(img);
    action.push_back(std::move(entry));
  }
  Json out;
  out["name"] = t.name();
  out["kappa"] = exponents_to_json(t.kappa_in());
  out["nvars_out"] = t.nvars_out();
  out["action"] = std::move(action);
  return out;
}

SpinSystem spin_system_from_json(const Json& j, const std::string& where) {
  const int n = integer(field(j, "n", where), at(where, "n"));
  const Json& rows = array(field(j, "J", where), at(where, "J"));
  std::vector<std::vector<double>> J;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::string w = item(at(where, "J"), r);
    std::vector<double> row;
    for (std::size_t c = 0; c < array(rows[r], w).size(); ++c) row.push_back(number(rows[r][c], item(w, c)));
    J.push_back(std::move(row));
  }
  return wrap(where, [&] { return SpinSystem(n, std::move(J)); });
}

Json to_json(const SpinSystem& s) {
  Json out;
  out["n"] = s.n;
  out["J"] = s.J;
  return out;
}

WeightedGraph graph_from_json(const Json& j, const std::string& where) {
  const int n = integer(field(j, "n", where), at(where, "n"));
  const Json& edges = array(field(j, "edges", where), at(where, "edges"));
  std::vector<WeightedGraph::Edge> es;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const std::string w = item(at(where, "edges"), k);
    if (!edges[k].is_array() || (edges[k].size() != 2 && edges[k].size() != 3)) fail(w, "expected [i, j] or [i, j, lambda]");
    WeightedGraph::Edge e;
    e.i = integer(edges[k][0], item(w, 0));
    e.j = integer(edges[k][1], item(w, 1));
    if (edges[k].size() == 3) e.lambda = number(edges[k][2], item(w, 2));
    es.push_back(e);
  }
  return wrap(where, [&] { return WeightedGraph(n, std::move(es)); });
}

Json to_json(const WeightedGraph& g) {
  Json edges = Json::array();
  for (const auto& e : g.edges) edges.push_back(Json::array({e.i, e.j, e.lambda}));
  Json out;
  out["n"] = g.n;
  out["edges"] = std::move(edges);
  return out;
}

std::vector<std::vector<Complex>> couplings_from_json(const Json& j, const std::string& where) {
  const int n = integer(field(j, "n", where), at(where, "n"));
  const Json& rows = array(field(j, "a", where), at(where, "a"));
  if (n < 1 || static_cast<int>(rows.size()) != n) fail(at(where, "a"), "expected n rows");
  std::vector<std::vector<Complex>> a;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::string w = item(at(where, "a"), r);
    if (array(rows[r], w).size() != static_cast<std::size_t>(n)) fail(w, "expected n entries");
    std::vector<Complex> row;
    for (std::size_t c = 0; c < rows[r].size(); ++c) row.push_back(complex_from_json(rows[r][c], item(w, c)));
    a.push_back(std::move(row));
  }
  return a;
}

Json to_json(const MoebiusMap& m) {
  Json out;
  out["a"] = to_json(m.a());
  out["b"] = to_json(m.b());
  out["c"] = to_json(m.c());
  out["d"] = to_json(m.d());
  return out;
}

Json to_json(const StabilityVerdict& v) {
  Json out;
  if (v.found_zero()) {
    const auto& cx = v.counterexample();
    out["result"] = "counterexample";
    Json pt = Json::array();
    for (Complex z : cx.point) pt.push_back(to_json(z));
    out["point"] = std::move(pt);
    out["residual"] = cx.residual;
    out["scale"] = cx.scale;
    out["boundary_margin"] = cx.boundary_margin;
  } else {
    const auto& ev = v.evidence();
    out["result"] = "no_zero_found";
    out["slices_per_variable"] = ev.slices_per_variable;
    out["total_samples"] = ev.total_samples;
    out["min_abs_seen"] = ev.min_abs_seen;
  }
  return out;
}

Json to_json(const MembershipVerdict& v) {
  Json out;
  out["member"] = v.member;
  out["reason"] = v.reason;
  if (v.stability) out["stability"] = to_json(*v.stability);
  return out;
}

Json to_json(const SymbolReport& r) {
  Json out;
  out["kind"] = to_string(r.kind);
  if (r.kind == SymbolKind::kTranscendentalTruncation) out["order"] = r.order;
  out["symbol"] = to_json(r.symbol);
  out["symbol_is_zero"] = r.symbol.is_zero();
  if (r.verdict) out["symbol_verdict"] = to_json(*r.verdict);
  out["rank_le_one"] = r.rank_le_one;
  if (r.common_image) out["common_image"] = to_json(*r.common_image);
  if (r.image_verdict) out["image_verdict"] = to_json(*r.image_verdict);
  out["evidence_positive"] = r.evidence_positive;
  return out;
}

Json to_json(const GraceReport& r) {
  Json out;
  out["bracket"] = to_json(r.bracket.value);
  out["abs_bracket"] = r.abs_bracket;
  out["scale"] = r.bracket.scale;
  out["hypotheses_verified"] = r.hypotheses_verified;
  out["conclusion_applicable"] = r.conclusion_applicable;
  out["violation"] = r.violation;
  out["notes"] = r.notes;
  return out;
}

Json to_json(const GraceCampaignReport& r) {
  Json out;
  out["name"] = r.name;
  out["seed"] = r.seed;
  out["trials"] = r.trials;
  out["hypotheses_verified"] = r.hypotheses_verified;
  out["conclusion_applicable"] = r.conclusion_applicable;
  out["violations"] = r.violations;
  out["min_relative_bracket"] = r.min_relative_bracket;
  out["violation_seeds"] = r.violation_seeds;
  out["classical_violations"] = r.classical_violations;
  out["classical_min_relative_bracket"] = r.classical_min_relative_bracket;
  return out;
}

Json to_json(const LeeYangReport& r) {
  Json roots = Json::array();
  for (Complex z : r.roots) roots.push_back(to_json(z));
  Json out;
  out["ferromagnetic"] = r.ferromagnetic;
  out["max_deviation"] = r.max_deviation;
  out["tol"] = r.tol;
  out["pass"] = r.pass;
  out["roots"] = std::move(roots);
  return out;
}

Json to_json(const HeilmannLiebReport& r) {
  Json roots = Json::array();
  for (Complex z : r.diagonal_roots) roots.push_back(to_json(z));
  Json out;
  out["poly"] = to_json(r.poly);
  if (r.verdict) out["verdict"] = to_json(*r.verdict);
  out["max_real_part"] = r.max_real_part;
  out["tol"] = r.tol;
  out["pass"] = r.pass;
  out["diagonal_roots"] = std::move(roots);
  return out;
}

Json to_json(const CircleTheoremReport& r) {
  Json out;
  out["hadamard_product"] = to_json(r.forms.hadamard_product);
  out["max_difference"] = r.forms.max_difference;
  out["verdict"] = to_json(r.verdict);
  out["pass"] = r.pass;
  return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace leeyang
