#include "leeyang_cli/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include "leeyang/composition.hpp"
#include "leeyang/error.hpp"
#include "leeyang/json_io.hpp"
#include "leeyang/operators.hpp"
#include "leeyang/oracle.hpp"
#include "leeyang/statmech.hpp"

namespace leeyang::cli {

namespace {

std::vector<double> split_numbers(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || end != item.c_str() + item.size() || !std::isfinite(v)) {
      throw FormatError("bad number \"" + item + "\"");
    }
    out.push_back(v);
  }
  return out;
}

std::string fmt(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v == 0.0 ? 0.0 : v);
  return buf;
}

std::string fmt(Complex c) {
  const double scale = std::max(std::abs(c.real()), std::abs(c.imag()));
  const bool re = std::abs(c.real()) > 1e-14 * scale;
  const bool im = std::abs(c.imag()) > 1e-14 * scale;
  if (!im) return fmt(c.real());
  if (!re) {
    if (c.imag() == 1.0) return "i";
    if (c.imag() == -1.0) return "-i";
    return fmt(c.imag()) + "i";
  }
  return "(" + fmt(c.real()) + (c.imag() < 0 ? "-" : "+") + fmt(std::abs(c.imag())) + "i)";
}

std::vector<std::string> variable_names(int nvars, bool doubled) {
  std::vector<std::string> names;
  if (doubled && nvars % 2 == 0) {
    for (int i = 0; i < nvars / 2; ++i) names.push_back("z" + std::to_string(i + 1));
    for (int i = 0; i < nvars / 2; ++i) names.push_back("w" + std::to_string(i + 1));
  } else {
    for (int i = 0; i < nvars; ++i) names.push_back("z" + std::to_string(i + 1));
  }
  return names;
}

std::string format_poly(const MultiPoly& f, bool doubled = false) {
  if (f.is_zero()) return "0";
  const auto names = variable_names(f.nvars(), doubled);
  std::string out;
  for (const auto& [e, c] : f.terms()) {
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += " ";
      mono += names[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    std::string coef = fmt(c);
    if (!out.empty()) out += " + ";
    if (mono.empty()) {
      out += coef;
    } else if (coef == "1") {
      out += mono;
    } else {
      out += coef + " " + mono;
    }
  }
  return out;
}

std::string csv_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw FormatError("cannot write " + path);
  f << text;
}

void write_roots_csv(const std::string& path, const std::vector<Complex>& roots) {
  std::string text = "re,im,modulus\n";
  for (Complex r : roots) {
    text += csv_number(r.real()) + "," + csv_number(r.imag()) + "," + csv_number(std::abs(r)) + "\n";
  }
  write_file(path, text);
}

struct Common {
  std::uint64_t seed = 0;
  int slices = 200;
  double residual_tol = 1e-9;
  double margin = 1e-7;
  std::string json_path;
  std::string csv_path;

  OracleConfig oracle() const {
    OracleConfig cfg;
    cfg.seed = seed;
    cfg.slices_per_variable = slices;
    cfg.residual_tol = residual_tol;
    cfg.boundary_margin = margin;
    return cfg;
  }
};

void add_common(CLI::App* app, Common& c, bool csv) {
  app->add_option("--seed", c.seed, "Oracle seed (default: $LEEYANG_SEED or 0)");
  app->add_option("--slices", c.slices, "Slices per variable")->check(CLI::PositiveNumber);
  app->add_option("--residual-tol", c.residual_tol, "Relative residual tolerance for witnesses")
      ->check(CLI::PositiveNumber);
  app->add_option("--margin", c.margin, "Minimum boundary margin for witnesses")->check(CLI::PositiveNumber);
  app->add_option("--json", c.json_path, "Write the machine-readable report here");
  if (csv) app->add_option("--csv", c.csv_path, "Write roots as re,im,modulus rows here");
}

DomainProduct make_product(const std::vector<std::string>& specs, int nvars) {
  if (specs.empty()) throw FormatError("--domain is required");
  std::vector<CircularDomain> ds;
  for (const auto& s : specs) ds.push_back(parse_domain(s));
  if (ds.size() == 1) return DomainProduct::uniform(ds[0], nvars);
  if (static_cast<int>(ds.size()) != nvars) {
    throw FormatError("got " + std::to_string(ds.size()) + " domains for " + std::to_string(nvars) + " variables");
  }
  return DomainProduct(std::move(ds));
}

ExponentVector make_kappa(const std::vector<int>& k) {
  ExponentVector e(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k[i] < 0) throw FormatError("kappa entries must be non-negative");
    e[i] = k[i];
  }
  return e;
}

Json domains_json(const DomainProduct& omega) {
  Json a = Json::array();
  for (const auto& d : omega.domains) a.push_back(to_json(d));
  return a;
}

void describe_verdict(std::ostream& out, const StabilityVerdict& v) {
  if (v.found_zero()) {
    const auto& cx = v.counterexample();
    out << "counterexample at (";
    for (std::size_t i = 0; i < cx.point.size(); ++i) out << (i ? ", " : "") << fmt(cx.point[i]);
    out << "), residual " << fmt(cx.residual, 3) << ", margin " << fmt(cx.boundary_margin, 3) << "\n";
  } else {
    const auto& ev = v.evidence();
    out << "no zero found (" << ev.total_samples << " slices, min |f|/scale " << fmt(ev.min_abs_seen, 3) << ")\n";
  }
}

// --------------------------------------------------------------------------
// Subcommands

struct StabilityCmd {
  Common common;
  std::string poly;
  std::vector<std::string> domains;
  std::vector<int> kappa;
};

int run_stability(const StabilityCmd& c, std::ostream& out) {
  const MultiPoly f = poly_from_json(read_json_file(c.poly));
  const DomainProduct omega = make_product(c.domains, f.nvars());
  Json report;
  report["command"] = "stability";
  report["domains"] = domains_json(omega);
  report["seed"] = c.common.seed;
  int code = kPass;
  if (!c.kappa.empty()) {
    const auto mv = in_N_kappa(f, omega, make_kappa(c.kappa), c.common.oracle());
    out << "membership: " << (mv.member ? "evidence-positive" : "not a member") << " (" << mv.reason << ")\n";
    if (mv.stability) describe_verdict(out, *mv.stability);
    report["membership"] = to_json(mv);
    code = mv.member ? kPass : kFail;
  } else {
    const auto v = find_zero(f, omega, c.common.oracle());
    describe_verdict(out, v);
    report["verdict"] = to_json(v);
    code = v.found_zero() ? kFail : kPass;
    if (!c.common.csv_path.empty() && v.found_zero()) write_roots_csv(c.common.csv_path, v.counterexample().point);
  }
  if (!c.common.json_path.empty()) write_file(c.common.json_path, dump(report));
  return code;
}

struct SymbolCmd {
  Common common;
  std::string op;
  std::string kind = "auto";
  std::vector<std::string> domains;
  int order = -1;
  std::string sign = "minus";
};

MultiPoly symbol_of(const LinearOperator& t, const SymbolCmd& c, SymbolKind& kind) {
  if (c.kind == "halfplane") {
    kind = SymbolKind::kAlgebraicHalfPlane;
    return algebraic_symbol_halfplane(t);
  }
  if (c.kind == "disc") {
    kind = SymbolKind::kAlgebraicDisc;
    return algebraic_symbol_disc(t);
  }
  if (c.kind == "transcendental") {
    kind = SymbolKind::kTranscendentalTruncation;
    int order = c.order;
    if (order < 0) {
      order = t.kappa_in()[0];
      for (int k : t.kappa_in()) order = std::min(order, k);
    }
    if (c.sign != "minus" && c.sign != "plus") throw FormatError("--sign must be minus or plus");
    return transcendental_symbol_truncated(t, c.sign == "minus" ? SeriesSign::kMinus : SeriesSign::kPlus, order);
  }
  if (c.kind == "general") {
    kind = SymbolKind::kAlgebraicGeneral;
    const DomainProduct omega = make_product(c.domains, t.nvars_in());
    std::vector<MoebiusMap> maps;
    for (const auto& d : omega.domains) maps.push_back(map_to_upper_half_plane(d));
    return algebraic_symbol_general(t, maps);
  }
  throw FormatError("--kind must be halfplane, disc, general or transcendental");
}

int run_symbol(const SymbolCmd& c, std::ostream& out) {
  const LinearOperator t = operator_from_json(read_json_file(c.op));
  SymbolKind kind{};
  const MultiPoly s = symbol_of(t, c, kind);
  out << to_string(kind) << " symbol of " << (t.name().empty() ? "operator" : t.name()) << ":\n  "
      << format_poly(s, true) << "\n";
  Json report;
  report["command"] = "symbol";
  report["operator"] = t.name();
  report["kind"] = to_string(kind);
  report["symbol"] = to_json(s);
  if (!c.common.json_path.empty()) write_file(c.common.json_path, dump(report));
  return kPass;
}

struct ClassifyCmd {
  Common common;
  std::string op;
  std::vector<std::string> domains;
};

int run_classify(const ClassifyCmd& c, std::ostream& out) {
  const LinearOperator t = operator_from_json(read_json_file(c.op));
  const DomainProduct omega = make_product(c.domains, t.nvars_in());
  const SymbolReport rep = classify_preserver_evidence(t, omega, {}, c.common.oracle());
  out << to_string(rep.kind) << " symbol:\n  " << format_poly(rep.symbol, true) << "\n";
  out << "rank <= 1: " << (rep.rank_le_one ? "yes" : "no") << "\n";
  if (rep.verdict) {
    out << "symbol on Omega x Omega: ";
    describe_verdict(out, *rep.verdict);
  }
  if (rep.image_verdict) {
    out << "common image on Omega: ";
    describe_verdict(out, *rep.image_verdict);
  }
  out << (rep.evidence_positive ? "evidence-positive: consistent with a stability preserver\n"
                                : "certified: not a stability preserver by either criterion\n");
  Json report;
  report["command"] = "classify";
  report["operator"] = t.name();
  report["domains"] = domains_json(omega);
  report["seed"] = c.common.seed;
  report["report"] = to_json(rep);
  if (!c.common.json_path.empty()) write_file(c.common.json_path, dump(report));
  return rep.evidence_positive ? kPass : kFail;
}

struct MoebiusCmd {
  Common common;
  std::string from;
  std::string to = "uhp";
  std::string poly;
  std::vector<int> kappa;
};

int run_moebius(const MoebiusCmd& c, std::ostream& out) {
  const CircularDomain from = parse_domain(c.from);
  const CircularDomain to = parse_domain(c.to);
  const MoebiusMap m = moebius_for(from, to);
  out << "phi(z) = (" << fmt(m.a()) << " z + " << fmt(m.b()) << ") / (" << fmt(m.c()) << " z + " << fmt(m.d())
      << ")\n";
  Json report;
  report["command"] = "moebius";
  report["from"] = to_json(from);
  report["to"] = to_json(to);
  report["map"] = to_json(m);
  if (!c.poly.empty()) {
    const MultiPoly f = poly_from_json(read_json_file(c.poly));
    ExponentVector kappa = c.kappa.empty() ? f.degrees() : make_kappa(c.kappa);
    // Phi_kappa transports `to`-stability of f into `from`-stability.
    const std::vector<MoebiusMap> maps(static_cast<std::size_t>(f.nvars()), m);
    const MultiPoly g = phi_kappa(f, maps, kappa);
    out << "Phi_kappa(f) = " << format_poly(g) << "\n";
    report["phi_kappa"] = to_json(g);
  }
  if (!c.common.json_path.empty()) write_file(c.common.json_path, dump(report));
  return kPass;
}

struct ComposeCmd {
  Common common;
  std::string f;
  std::string g;
  std::vector<int> kappa;
  std::string mode = "halfplane";
  double theta = 0.0;
};

int run_compose(const ComposeCmd& c, std::ostream& out) {
  const MultiPoly f = poly_from_json(read_json_file(c.f));
  const MultiPoly g = poly_from_json(read_json_file(c.g));
  const ExponentVector kappa = make_kappa(c.kappa);
  MultiPoly h;
  CircularDomain domain = CircularDomain::unit_disc();
  if (c.mode == "halfplane") {
    h = compose_halfplane(f, g, kappa);
    domain = CircularDomain::half_plane(c.theta);
  } else if (c.mode == "disc") {
    h = compose_disc(f, g, kappa);
  } else {
    throw FormatError("--mode must be halfplane or disc");
  }
  out << "composition: " << format_poly(h, true) << "\n";
  Json report;
  report["command"] = "compose";
  report["mode"] = c.mode;
  report["composition"] = to_json(h);
  int code = kPass;
  if (h.is_zero()) {
    out << "identically zero\n";
    report["identically_zero"] = true;
  } else {
    const auto v = find_zero(h, DomainProduct::uniform(domain, h.nvars()), c.common.oracle());
    out << "on " << domain.describe() << "^" << h.nvars() << ": ";
    describe_verdict(out, v);
    report["identically_zero"] = false;
    report["verdict"] = to_json(v);
    code = v.found_zero() ? kFail : kPass;
  }
  report["seed"] = c.common.seed;
  if (!c.common.json_path.empty()) write_file(c.common.json_path, dump(report));
  return code;
}

struct ApolarityCmd {
  Common common;
  std::string f;
  std::string g;
  std::vector<int> kappa;
  std::string sign = "global";
  std::string weights = "derivatives";
  std::string grace;
  std::vector<std::string> domains;
  std::string c1 = "uhp";
  std::string c2 = "uhp";
  std::string degree_reading = "g";
  double threshold = 1e-10;
};

int run_apolarity(const ApolarityCmd& c, std::ostream& out) {
  const MultiPoly f = poly_from_json(read_json_file(c.f));
  const MultiPoly g = poly_from_json(read_json_file(c.g));
  const ExponentVector kappa = make_kappa(c.kappa);
  GraceConfig cfg;
  cfg.oracle = c.common.oracle();
  cfg.vanishing_threshold = c.threshold;
  if (c.sign == "per-term") {
    cfg.bracket.sign = BracketSign::kPerTerm;
  } else if (c.sign != "global") {
    throw FormatError("--sign must be global or per-term");
  }
  if (c.weights == "plain") {
    cfg.bracket.weights = BracketWeights::kPlainCoefficients;
  } else if (c.weights != "derivatives") {
    throw FormatError("--weights must be derivatives or plain");
  }
  if (c.degree_reading == "f") {
    cfg.degree_reading = DegreeReading::kOnF;
  } else if (c.degree_reading != "g") {
    throw FormatError("--degree-reading must be f or g");
  }
  Json report;
  report["command"] = "apolarity";
  const BracketValue b = apolarity_bracket_detail(f, g, kappa, cfg.bracket);
  out << "bracket = " << fmt(b.value) << " (scale " << fmt(b.scale) << ")\n";
  report["bracket"] = to_json(b.value);
  report["scale"] = b.scale;
  int code = kPass;
  if (!c.grace.empty()) {
    GraceReport rep;
    if (c.grace == "disc") {
      const DomainProduct omega = make_product(c.domains, f.nvars());
      rep = grace_check_disc(f, g, omega.domains, kappa, cfg);
    } else if (c.grace == "halfplane") {
      rep = grace_check_halfplane(f, g, parse_domain(c.c1), parse_domain(c.c2), kappa, cfg);
    } else {
      throw FormatError("--grace must be disc or halfplane");
    }
    out << "hypotheses " << (rep.hypotheses_verified ? "verified" : "not verified") << "; conclusion "
        << (rep.conclusion_applicable ? "applicable" : "not applicable") << "\n";
    for (const auto& note : rep.notes) out << "  " << note << "\n";
    out << (rep.violation ? "VIOLATION: bracket vanishes\n" : "no violation\n");
    report["grace"] = to_json(rep);
    report["seed"] = c.common.seed;
    code = rep.violation ? kFail : kPass;
  }
  if (!c.common.json_path.empty()) write_file(c.common.json_path, dump(report));
  return code;
}

struct LeeYangCmd {
  Common common;
  std::string system;
  double tol = 1e-8;
  bool exterior = false;
};

int run_lee_yang(const LeeYangCmd& c, std::ostream& out) {
  const SpinSystem s = spin_system_from_json(read_json_file(c.system));
  const LeeYangReport rep = lee_yang_check(s, c.tol);
  out << "n = " << s.n << (rep.ferromagnetic ? ", ferromagnetic" : ", not ferromagnetic") << "\n";
  out << "max | |root| - 1 | = " << fmt(rep.max_deviation, 3) << " over " << rep.roots.size() << " roots\n";
  Json report;
  report["command"] = "lee-yang";
  report["circle"] = to_json(rep);
  bool pass = rep.pass;
  if (c.exterior) {
    const MultiPoly p = partition_fugacity(s);
    const auto v = find_zero(p, DomainProduct::uniform(CircularDomain::unit_disc_exterior(), s.n), c.common.oracle());
    out << "fugacity polynomial on |x_i| > 1: ";
    describe_verdict(out, v);
    report["exterior"] = to_json(v);
    report["seed"] = c.common.seed;
    pass = pass && !v.found_zero();
  }
  out << (pass ? "PASS\n" : "FAIL\n");
  if (!c.common.csv_path.empty()) write_roots_csv(c.common.csv_path, rep.roots);
  if (!c.common.json_path.empty()) write_file(c.common.json_path, dump(report));
  return pass ? kPass : kFail;
}

struct MatchingCmd {
  Common common;
  std::string graph;
  double tol = 1e-8;
};

int run_matching(const MatchingCmd& c, std::ostream& out) {
  const WeightedGraph g = graph_from_json(read_json_file(c.graph));
  const HeilmannLiebReport rep = heilmann_lieb_check(g, c.tol, c.common.oracle());
  out << "matching polynomial: " << format_poly(rep.poly) << "\n";
  out << "on the right half-plane: ";
  describe_verdict(out, *rep.verdict);
  out << "max |Re root| on the diagonal = " << fmt(rep.max_real_part, 3) << "\n";
  out << (rep.pass ? "PASS\n" : "FAIL\n");
  Json report;
  report["command"] = "matching";
  report["seed"] = c.common.seed;
  report["report"] = to_json(rep);
  if (!c.common.csv_path.empty()) write_roots_csv(c.common.csv_path, rep.diagonal_roots);
  if (!c.common.json_path.empty()) write_file(c.common.json_path, dump(report));
  return rep.pass ? kPass : kFail;
}

struct CircleCmd {
  Common common;
  std::string couplings;
};

int run_circle(const CircleCmd& c, std::ostream& out) {
  const auto a = couplings_from_json(read_json_file(c.couplings));
  const CircleTheoremReport rep = circle_theorem_check(a, c.common.oracle());
  out << "product: " << format_poly(rep.forms.hadamard_product) << "\n";
  out << "max |Hadamard - closed form| = " << fmt(rep.forms.max_difference, 3) << "\n";
  out << "on the unit disc: ";
  describe_verdict(out, rep.verdict);
  out << (rep.pass ? "PASS\n" : "FAIL\n");
  Json report;
  report["command"] = "circle";
  report["seed"] = c.common.seed;
  report["report"] = to_json(rep);
  if (!c.common.json_path.empty()) write_file(c.common.json_path, dump(report));
  return rep.pass ? kPass : kFail;
}

}  // namespace

CircularDomain parse_domain(const std::string& text) {
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::vector<double> args =
      colon == std::string::npos ? std::vector<double>{} : split_numbers(text.substr(colon + 1));
  try {
    if (head == "uhp" && args.empty()) return CircularDomain::upper_half_plane();
    if (head == "rhp" && args.empty()) return CircularDomain::half_plane(std::numbers::pi / 2);
    if (head == "halfplane") {
      if (args.empty()) return CircularDomain::upper_half_plane();
      if (args.size() == 1) return CircularDomain::half_plane(args[0]);
      if (args.size() == 3) return HalfPlane{args[0], Complex(args[1], args[2])};
    }
    if (head == "disc" || head == "exterior") {
      Complex center = 0.0;
      double radius = 1.0;
      if (args.size() == 3) {
        center = Complex(args[0], args[1]);
        radius = args[2];
      } else if (!args.empty()) {
        throw FormatError("expected " + head + ":cx,cy,r");
      }
      if (head == "disc") return Disc{center, radius};
      return DiscExterior{center, radius};
    }
  } catch (const FormatError&) {
    throw;
  } catch (const Error& e) {
    throw FormatError("domain \"" + text + "\": " + e.what());
  }
  throw FormatError("unrecognized domain \"" + text + "\"");
}

std::uint64_t default_seed() {
  const char* env = std::getenv("LEEYANG_SEED");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0') throw FormatError("LEEYANG_SEED must be a non-negative integer");
  return v;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stability-preserver laboratory: polynomial stability, operator symbols, apolarity and "
               "Lee-Yang type checks.",
               "leeyang"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  std::uint64_t seed = 0;
  try {
    seed = default_seed();
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  StabilityCmd stability;
  SymbolCmd symbol;
  ClassifyCmd classify;
  MoebiusCmd moebius;
  ComposeCmd compose;
  ApolarityCmd apolarity;
  LeeYangCmd lee_yang;
  MatchingCmd matching;
  CircleCmd circle;
  for (Common* c : {&stability.common, &symbol.common, &classify.common, &moebius.common, &compose.common,
                    &apolarity.common, &lee_yang.common, &matching.common, &circle.common}) {
    c->seed = seed;
  }

  auto* s = app.add_subcommand("stability", "Search for a zero of a polynomial in a product of circular domains");
  s->add_option("--poly", stability.poly, "Polynomial JSON")->required();
  s->add_option("--domain", stability.domains, "Domain (repeat once per variable, or give one for all)")
      ->required();
  s->add_option("--kappa", stability.kappa, "Check membership in N_kappa instead (degree vector)")->delimiter(',');
  add_common(s, stability.common, true);

  auto* sy = app.add_subcommand("symbol", "Print an operator symbol");
  sy->add_option("--op", symbol.op, "Operator JSON")->required();
  sy->add_option("--kind", symbol.kind, "halfplane | disc | general | transcendental")->required();
  sy->add_option("--domain", symbol.domains, "Domains for the general symbol");
  sy->add_option("--order", symbol.order, "Truncation order (transcendental)");
  sy->add_option("--sign", symbol.sign, "minus: e^{-zw} (H_0); plus: e^{zw} (H_{pi/2})");
  add_common(sy, symbol.common, false);

  auto* cl = app.add_subcommand("classify", "Preserver evidence for an operator on a domain product");
  cl->add_option("--op", classify.op, "Operator JSON")->required();
  cl->add_option("--domain", classify.domains, "Domain (repeat once per variable, or give one for all)")
      ->required();
  add_common(cl, classify.common, false);

  auto* mo = app.add_subcommand("moebius", "Catalog Moebius map between circular domains");
  mo->add_option("--from", moebius.from, "Source domain")->required();
  mo->add_option("--to", moebius.to, "Target domain (default uhp)");
  mo->add_option("--poly", moebius.poly, "Apply Phi_kappa to this polynomial");
  mo->add_option("--kappa", moebius.kappa, "Degree vector for Phi_kappa (default: degrees of the polynomial)")
      ->delimiter(',');
  add_common(mo, moebius.common, false);

  auto* co = app.add_subcommand("compose", "Composition of two 2n-variable forms");
  co->add_option("--f", compose.f, "First form (P_a(w) z^a)")->required();
  co->add_option("--g", compose.g, "Second form (Q_a(z) w^a)")->required();
  co->add_option("--kappa", compose.kappa, "Degree vector")->required()->delimiter(',');
  co->add_option("--mode", compose.mode, "halfplane | disc");
  co->add_option("--theta", compose.theta, "Half-plane angle for the stability check");
  add_common(co, compose.common, false);

  auto* ap = app.add_subcommand("apolarity", "Apolarity bracket and Grace-type checks");
  ap->add_option("--f", apolarity.f, "Polynomial f")->required();
  ap->add_option("--g", apolarity.g, "Polynomial g")->required();
  ap->add_option("--kappa", apolarity.kappa, "Degree vector")->required()->delimiter(',');
  ap->add_option("--sign", apolarity.sign, "global: (-1)^|kappa|; per-term: (-1)^|alpha|");
  ap->add_option("--weights", apolarity.weights, "derivatives | plain");
  ap->add_option("--grace", apolarity.grace, "Run a Grace check: disc | halfplane");
  ap->add_option("--domain", apolarity.domains, "Discs or exteriors for --grace disc");
  ap->add_option("--c1", apolarity.c1, "Half-plane of f for --grace halfplane");
  ap->add_option("--c2", apolarity.c2, "Half-plane of g for --grace halfplane");
  ap->add_option("--degree-reading", apolarity.degree_reading, "Disc-side degree condition on g (default) or f");
  ap->add_option("--threshold", apolarity.threshold, "Relative vanishing threshold")->check(CLI::PositiveNumber);
  add_common(ap, apolarity.common, false);

  auto* ly = app.add_subcommand("lee-yang", "Lee-Yang circle check for an Ising system");
  ly->add_option("--system", lee_yang.system, "Spin system JSON")->required();
  ly->add_option("--tol", lee_yang.tol, "Tolerance on | |root| - 1 |")->check(CLI::PositiveNumber);
  ly->add_flag("--exterior", lee_yang.exterior, "Also search the fugacity polynomial on |x_i| > 1");
  add_common(ly, lee_yang.common, true);

  auto* ma = app.add_subcommand("matching", "Heilmann-Lieb check for a weighted graph");
  ma->add_option("--graph", matching.graph, "Graph JSON")->required();
  ma->add_option("--tol", matching.tol, "Tolerance on |Re root|")->check(CLI::PositiveNumber);
  add_common(ma, matching.common, true);

  auto* ci = app.add_subcommand("circle", "Circle-theorem product for a coupling matrix");
  ci->add_option("--couplings", circle.couplings, "Coupling matrix JSON")->required();
  add_common(ci, circle.common, false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kUsage;
  }

  try {
    if (*s) return run_stability(stability, out);
    if (*sy) return run_symbol(symbol, out);
    if (*cl) return run_classify(classify, out);
    if (*mo) return run_moebius(moebius, out);
    if (*co) return run_compose(compose, out);
    if (*ap) return run_apolarity(apolarity, out);
    if (*ly) return run_lee_yang(lee_yang, out);
    if (*ma) return run_matching(matching, out);
    if (*ci) return run_circle(circle, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace leeyang::cli
