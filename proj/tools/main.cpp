// xg: command-line front end.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>

#include "xg/decision.hpp"
#include "xg/io.hpp"
#include "xg/isoperimetry.hpp"
#include "xg/sidki.hpp"

namespace {

using namespace xg;

enum Exit { kPass = 0, kMathFailure = 1, kBudget = 2, kUsage = 3 };

struct Config {
  std::string presentation, file, witness = "auto", json_path, word;
  bool doubled = false;
  std::size_t max_cosets = kDefaultMaxCosets, guard = kDefaultGuard, budget = 4, radius = 4;
  int grid = 0;

  Json to_json() const {
    Json j;
    j["presentation"] = presentation;
    j["file"] = file;
    j["double"] = doubled;
    j["witness"] = witness;
    j["max_cosets"] = max_cosets;
    j["guard"] = guard;
    j["budget"] = budget;
    j["radius"] = radius;
    j["word"] = word;
    j["grid"] = grid;
    return j;
  }
};

class Usage : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Report {
  Json result = Json::object();
  bool pass = true;
  std::ostringstream summary;
};

Presentation load(const Config& c) {
  if (!c.presentation.empty() && !c.file.empty()) throw Usage("give either -p or --file, not both");
  if (!c.presentation.empty()) return parse_presentation(c.presentation);
  if (!c.file.empty()) return load_presentation(c.file);
  throw Usage("no presentation: use -p \"<...>\" or --file PATH");
}

WitnessPolicy policy(const Config& c) { return parse_witness_policy(c.witness, c.max_cosets); }

BuildOptions build_options(const Config& c) {
  BuildOptions o;
  o.max_cosets = c.max_cosets;
  o.guard = c.guard;
  o.strict = false;
  return o;
}

Json checks_json(const std::vector<CheckResult>& checks, Report& r) {
  Json out = Json::array();
  for (const auto& ch : checks) {
    Json j{{"name", ch.name}, {"pass", ch.pass}};
    if (!ch.pass) j["witness"] = ch.witness;
    out.push_back(j);
    r.pass = r.pass && ch.pass;
    r.summary << "  " << (ch.pass ? "pass " : "FAIL ") << ch.name;
    if (!ch.pass) r.summary << ": " << ch.witness;
    r.summary << "\n";
  }
  return out;
}

std::string big(const BigInt& x) { return to_string(x); }

Json nilpotency_json(const NilpotencyClass& c) {
  if (auto k = std::get_if<int>(&c)) return *k;
  return Json{{"not_nilpotent", true}, {"stable_order", std::get<NotNilpotent>(c).stable_order}};
}

std::string nilpotency_text(const NilpotencyClass& c) {
  if (auto k = std::get_if<int>(&c)) return std::to_string(*k);
  return "not nilpotent";
}

bool is_free(const Presentation& p) { return p.relators().empty(); }

bool is_free_abelian(const Presentation& p) {
  std::vector<Word> comms;
  const std::size_t n = p.rank();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) comms.push_back(commutator(Word(letter_of(i)), Word(letter_of(j))));
  if (comms.empty() || p.relators().size() != comms.size()) return false;
  Presentation target(p.generators(), comms);
  std::set<std::size_t> hit;
  for (const auto& r : p.relators()) {
    auto f = as_relator_conjugate(target, r);
    if (!f) return false;
    hit.insert(f->relator);
  }
  return hit.size() == comms.size();
}

// ---- commands ----

void cmd_parse(const Config& c, Report& r) {
  Presentation p = load(c);
  if (c.doubled) p = sidki_double(p, policy(c));
  r.result["presentation"] = to_json(p);
  r.summary << to_string(p) << "\n";
}

void cmd_double(const Config& c, Report& r) {
  Presentation d = sidki_double(load(c), policy(c));
  r.result["presentation"] = to_json(d);
  r.summary << to_string(d) << "\n"
            << "witness policy " << d.meta.witness_policy
            << (d.meta.may_be_proper_preimage ? " (may present a proper preimage)" : "") << "\n";
}

void cmd_realize(const Config& c, Report& r) {
  XRealization x = build(load(c), build_options(c));
  r.result["order_G"] = x.G.order();
  r.result["order_X"] = x.X.order();
  r.result["base_table"] = to_json(x.base_table, x.base.generators());
  r.result["table"] = to_json(x.table, x.doubled.generators());
  r.summary << "|G| = " << x.G.order() << ", |X(G)| = " << x.X.order() << "\n";
}

void cmd_verify(const Config& c, Report& r) {
  XRealization x = build(load(c), build_options(c));
  r.result["orders"] = {{"G", x.G.order()},   {"X", x.X.order()},   {"D", x.D.order()},
                        {"L", x.L.order()},   {"W", x.W.order()},   {"DL", x.DL.order()},
                        {"im_rho", x.im_rho.order()}, {"ker_rho", x.ker_rho.order()}};
  r.summary << "|G| = " << x.G.order() << ", |X(G)| = " << x.X.order() << ", |D| = " << x.D.order()
            << ", |L| = " << x.L.order() << ", |W| = " << x.W.order() << ", |im rho| = " << x.im_rho.order()
            << "\n";
  r.summary << "structure checks:\n";
  r.result["checks"] = checks_json(x.checks, r);

  auto nil = nilpotence_report(x);
  r.result["nilpotency"] = {{"G", nilpotency_json(nil.class_G)}, {"X", nilpotency_json(nil.class_X)},
                            {"pass", nil.pass}};
  r.pass = r.pass && nil.pass;
  r.summary << "nilpotency class: G " << nilpotency_text(nil.class_G) << ", X(G) "
            << nilpotency_text(nil.class_X) << (nil.pass ? "" : "  FAIL") << "\n";

  auto mc = module_consistency(x);
  r.summary << "module checks:\n";
  r.result["module_checks"] = checks_json(mc.checks, r);
  auto ws = w_structure_checks(x);
  r.summary << "W-structure checks:\n";
  r.result["w_structure_checks"] = checks_json(ws.checks, r);
}

void cmd_engel(const Config& c, Report& r) {
  XRealization x = build(load(c), build_options(c));
  EngelCertificate e;
  try {
    e = engel_certificate(x);
  } catch (const ArgumentError& err) {
    throw Usage(err.what());
  }
  r.result = {{"n", e.n}, {"d", e.d}, {"s", e.s}, {"m", e.m}, {"verdict", e.verdict}};
  if (e.minimal_engel_X) r.result["minimal_engel_X"] = *e.minimal_engel_X;
  r.pass = e.verdict;
  r.summary << "n = " << e.n << ", d = " << e.d << ", s = " << e.s << ", m = n+d+s+3 = " << e.m
            << "\nX(G) is " << e.m << "-Engel: " << (e.verdict ? "true" : "false") << "\n";
  if (e.minimal_engel_X) r.summary << "least Engel degree of X(G): " << *e.minimal_engel_X << "\n";
}

void cmd_modules(const Config& c, Report& r) {
  XRealization x = build(load(c), build_options(c));
  auto mc = module_consistency(x);
  auto ws = w_structure_checks(x);
  r.result["aug_mod_I2"] = mc.aug.to_string();
  r.result["L_mod_L_prime"] = mc.l_mod_l_prime.to_string();
  r.result["lattices_agree"] = mc.lattices_agree;
  r.result["k"] = big(mc.identities.k);
  r.result["two_V_aug2_zero"] = mc.identities.two_v_aug2_zero;
  r.result["V_aug_k_plus_3_zero"] = mc.identities.v_aug_k_plus_3_zero;
  r.result["s"] = mc.s;
  r.result["order_M"] = big(ws.order_M);
  r.result["exponent_M"] = big(ws.exponent_M);
  r.result["order_W"] = big(ws.order_W);
  r.result["order_N"] = big(ws.order_N);
  r.result["exponent_N"] = big(ws.exponent_N);
  r.result["order_W_cap_L_prime"] = ws.order_W_cap_L_prime;
  r.result["G_prime_perfect"] = ws.g_prime_perfect;
  if (ws.w_action_class) r.result["W_action_class"] = *ws.w_action_class;
  r.summary << "Aug/I2 = " << mc.aug.to_string() << ", L/L' = " << mc.l_mod_l_prime.to_string()
            << ", s = " << mc.s << "\n|M| = " << big(ws.order_M) << ", |W| = " << big(ws.order_W)
            << ", |N| = " << big(ws.order_N) << "\n";
  r.result["checks"] = checks_json(mc.checks, r);
  r.result["w_checks"] = checks_json(ws.checks, r);
}

std::unique_ptr<XWordProblem> wp_setup(const Config& c, const Presentation& base) {
  if (is_free(base))
    return std::make_unique<XWordProblem>(base, free_group_oracle(base.generators()),
                                          sidki_double(base, policy(c)));
  if (is_free_abelian(base))
    return std::make_unique<XWordProblem>(base, free_abelian_oracle(base.generators()),
                                          sidki_double(base, policy(c)));
  auto x = std::make_shared<const XRealization>(build(base, build_options(c)));
  return std::make_unique<XWordProblem>(x);
}

void cmd_wp(const Config& c, Report& r) {
  if (c.word.empty()) throw Usage("wp needs --word");
  Presentation base = load(c);
  auto setup = wp_setup(c, base);
  const Alphabet& a = setup->doubled().generators();
  Word w = parse_word(c.word, a);
  WPBudget b;
  b.laps = c.budget;
  b.max_radius = c.radius;
  Verdict v = setup->decide(w, b);
  r.result["verdict"] = to_string(v.kind);
  r.result["method"] = v.method;
  if (v.certificate) r.result["certificate"] = to_json(*v.certificate, a);
  if (v.rho_coordinate >= 0) {
    r.result["rho_coordinate"] = v.rho_coordinate;
    r.result["rho_witness"] = to_string(v.rho_witness, base.generators());
  }
  if (!v.quotient_images.empty()) {
    Json q = Json::object();
    for (std::size_t i = 0; i < v.quotient_images.size(); ++i) q[a.symbol(i).text()] = v.quotient_images[i].images();
    r.result["quotient"] = q;
  }
  r.result["spent"] = {{"area", v.spent.area}, {"radius", v.spent.radius},
                       {"quotient_degree", v.spent.quotient_degree}, {"laps", v.spent.laps}};
  r.summary << to_string(w, a) << ": " << to_string(v.kind);
  if (!v.method.empty()) r.summary << " (" << v.method << ")";
  r.summary << "\n";
  if (v.kind == Verdict::Kind::unknown) throw BudgetError("word problem undecided within budget");
}

void cmd_growth(const Config& c, Report& r) {
  Presentation base = load(c);
  Presentation p = base;
  EqualityOracle eq;
  std::unique_ptr<XWordProblem> solver;
  if (c.doubled) {
    if (is_free(base) && base.rank() == 1) {
      p = sidki_double(base, LengthBound{2});
      eq = equality_from(free_abelian_oracle(p.generators()));  // X(Z) = Z^2
    } else if (!is_free(base) && !is_free_abelian(base)) {
      solver = std::make_unique<XWordProblem>(std::make_shared<const XRealization>(build(base, build_options(c))));
      p = solver->doubled();
      const XWordProblem* s = solver.get();
      eq = [s](const Word& u, const Word& v) -> std::optional<bool> {
        auto d = s->decide(u * v.inverse());
        if (d.kind == Verdict::Kind::unknown) return std::nullopt;
        return d.kind == Verdict::Kind::trivial;
      };
    } else {
      throw Usage("no normal form for this double; supported: X(Z) and finite G");
    }
  } else if (is_free(base)) {
    eq = equality_from(free_group_oracle(base.generators()));
  } else if (is_free_abelian(base)) {
    eq = equality_from(free_abelian_oracle(base.generators()));
  } else {
    eq = equality_from(finite_group_oracle(base, c.max_cosets));
  }
  auto gens = symmetric_generators(p.generators());
  auto sizes = ball_sizes(gens, eq, c.radius);
  if (sizes.size() < 4) throw Usage("growth needs --radius of at least 3");
  auto cls = growth_classifier(sizes);
  r.result = growth_json(gens, p.generators(), sizes, cls);
  r.summary << "ball sizes:";
  for (auto s : sizes) r.summary << " " << s;
  r.summary << "\n" << to_string(cls) << " (finite-data heuristic)\n";
}

void cmd_area(const Config& c, Report& r) {
  Presentation p = load(c);
  const bool lifted = p.lifting.has_value();
  Presentation q = lifted ? central_quotient(p, p.lifting->central_gens) : p;

  AreaCertificate cert;
  if (c.grid > 0) {
    cert = grid_certificate(c.grid);
    if (!check_certificate(q, cert)) throw Usage("--grid needs the presentation <a,b|[a,b]> (as quotient)");
  } else if (!c.word.empty()) {
    Word w = parse_word(c.word, q.generators());
    auto s = minimal_area_search(q, w, c.budget, c.radius);
    r.result["distinct_conjugates"] = s.distinct_conjugates;
    if (!s.minimum) {
      r.result["minimum"] = "Unknown";
      r.summary << "no certificate with area <= " << c.budget << " and radius <= " << c.radius << "\n";
      throw BudgetError("area search exhausted");
    }
    r.result["minimum"] = *s.minimum;
    cert = *s.certificate;
    r.summary << "minimal area " << *s.minimum << " (radius <= " << c.radius << ")\n";
  } else {
    throw Usage("area needs --grid N or --word W");
  }
  r.result["certificate"] = to_json(cert, q.generators());
  r.result["valid"] = check_certificate(q, cert);
  r.pass = r.result["valid"].get<bool>();
  r.summary << "certificate: area " << cert.area() << ", radius " << cert.radius()
            << (r.pass ? ", valid" : ", INVALID") << "\n";

  if (lifted) {
    auto t = central_transform(q, p, *p.lifting, cert);
    const Alphabet& ta = p.generators();
    r.result["lifted"] = {
        {"certificate", to_json(t.certificate, ta)},
        {"central_part", to_string(t.central_part, ta)},
        {"valid", check_certificate(p, t.certificate)},
        {"cost",
         {{"commutations", t.cost.commutations},
          {"relator_applications", t.cost.relator_applications},
          {"total", t.cost.total},
          {"itemized_bound", t.cost.itemized_bound},
          {"closed_form_bound", t.cost.closed_form_bound},
          {"within_bound", t.cost.within_bound}}}};
    r.pass = r.pass && t.cost.within_bound && check_certificate(p, t.certificate);
    r.summary << "lifted: central part " << to_string(t.central_part, ta) << ", area " << t.certificate.area()
              << ", cost " << t.cost.total << " <= bound " << t.cost.closed_form_bound
              << (t.cost.within_bound ? "" : "  FAIL") << "\n";
  }
}

int emit(const std::string& command, const Config& c, Report& r, int code) {
  std::cout << r.summary.str();
  Json j;
  j["schema"] = kSchemaVersion;
  j["command"] = command;
  j["config"] = c.to_json();
  j["result"] = r.result;
  j["pass"] = r.pass && code == kPass;
  j["exit_code"] = code;
  if (c.json_path == "-") {
    std::cout << j.dump(2) << "\n";
  } else if (!c.json_path.empty()) {
    std::ofstream out(c.json_path);
    if (!out) {
      std::cerr << "cannot write " << c.json_path << "\n";
      return kUsage;
    }
    out << j.dump(2) << "\n";
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Computations in the weak commutativity group X(G)"};
  app.set_config("--config", "", "flat key = value file (keys are long flag names)");
  Config c;
  app.add_option("-p,--presentation", c.presentation, "presentation text, e.g. \"<a,b|a^2,b^3>\"");
  app.add_option("--file", c.file, "presentation file (text or JSON)");
  app.add_flag("--double", c.doubled, "work in the Sidki double");
  app.add_option("--witness", c.witness, "witness policy: all | len:k | auto");
  app.add_option("--max-cosets", c.max_cosets, "coset enumeration budget")->check(CLI::PositiveNumber);
  app.add_option("--guard", c.guard, "largest group whose elements may be listed")->check(CLI::PositiveNumber);
  app.add_option("--budget", c.budget, "wp: search laps; area: largest area searched")->check(CLI::PositiveNumber);
  app.add_option("--radius", c.radius, "growth: ball radius; area, wp: conjugator length");
  app.add_option("--json", c.json_path, "write the JSON report to PATH (- for stdout)");
  app.add_option("--word", c.word, "word for wp or area");
  app.add_option("--grid", c.grid, "area: use the grid certificate for [a^N,b^N]");

  using Fn = void (*)(const Config&, Report&);
  const std::vector<std::tuple<std::string, std::string, Fn>> commands = {
      {"parse", "parse and print a presentation", cmd_parse},
      {"double", "print the Sidki double", cmd_double},
      {"realize", "enumerate G and X(G); coset tables", cmd_realize},
      {"verify", "build X(G) and run every structural check", cmd_verify},
      {"engel", "Engel certificate n, d, s, m", cmd_engel},
      {"modules", "augmentation and W-structure modules", cmd_modules},
      {"wp", "decide a word in X(G)", cmd_wp},
      {"growth", "ball sizes and growth class", cmd_growth},
      {"area", "area certificates and the central transform", cmd_area},
  };
  for (const auto& [name, help, fn] : commands) app.add_subcommand(name, help)->fallthrough();
  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  std::string command;
  Fn fn = nullptr;
  for (const auto& [name, help, f] : commands)
    if (app.got_subcommand(name)) {
      command = name;
      fn = f;
    }

  Report r;
  try {
    if (c.witness != "auto") parse_witness_policy(c.witness, c.max_cosets);
    fn(c, r);
    return emit(command, c, r, r.pass ? kPass : kMathFailure);
  } catch (const BudgetError& e) {
    r.result["error"] = e.what();
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return emit(command, c, r, kBudget);
  } catch (const VerificationError& e) {
    r.result["error"] = e.what();
    std::cerr << "verification failed: " << e.what() << "\n";
    return emit(command, c, r, kMathFailure);
  } catch (const std::exception& e) {  // usage, parse, alphabet and argument errors
    r.result["error"] = e.what();
    std::cerr << "error: " << e.what() << "\n";
    return emit(command, c, r, kUsage);
  }
}
