#include <CLI11.hpp>
#include <openssl/evp.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "qha/datum_io.hpp"
#include "qha/errors.hpp"
#include "qha/verify.hpp"

using namespace qha;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "qha 1.0.0";

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Usage("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string sha256(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream os;
  for (unsigned i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

// flag > QHA_BUDGET > file > default
long effective_budget(long flag, const DatumFile& d) {
  if (flag > 0) return flag;
  if (std::getenv("QHA_BUDGET")) return resolve_budget(0);
  if (d.budget > 0) return d.budget;
  return resolve_budget(0);
}

CocycleParams params_or_zero(const DatumFile& d) { return d.c ? *d.c : CocycleParams(d.datum.base); }

void print_report(const Report& r, const std::string& title) {
  long bad = 0;
  for (auto& c : r.checks) bad += !c.ok;
  std::cout << title << ": " << (bad ? "FAIL" : "ok") << " (" << r.checks.size() - bad << "/" << r.checks.size()
            << " checks)\n";
  for (auto& c : r.checks)
    if (!c.ok) std::cout << "  FAIL " << c.name << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
  for (auto& n : r.notes) std::cout << "  note: " << n << "\n";
}

// rule cache

json word_json(const Word& w) {
  json a = json::array();
  for (char x : w) a.push_back(static_cast<int>(static_cast<unsigned char>(x)));
  return a;
}

Word json_word(const json& a) {
  Word w;
  for (auto& x : a) w.push_back(static_cast<char>(x.get<int>()));
  return w;
}

std::filesystem::path cache_path(const std::string& dir, const DatumFile& d) {
  return std::filesystem::path(dir) / (sha256(std::string(kVersion) + "\n" + to_json(d).dump()) + ".json");
}

std::optional<std::vector<RewriteSystem::Rule>> cache_load(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) return std::nullopt;
  json j;
  try {
    in >> j;
    if (j.at("version") != kVersion) return std::nullopt;
    std::vector<RewriteSystem::Rule> rules;
    for (auto& r : j.at("rules")) {
      RewriteSystem::Rule rule;
      rule.lead = json_word(r.at("lead"));
      rule.f = r.at("f").get<long>();
      for (auto& t : r.at("tail")) rule.tail.emplace(json_word(t.at(0)), cyclo_from_json(t.at(1)));
      rules.push_back(std::move(rule));
    }
    return rules;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void cache_store(const std::filesystem::path& p, const QuasiHopfAlgebra& H) {
  json rules = json::array();
  for (auto& r : H.rewriting().active_rules()) {
    json tail = json::array();
    for (auto& [w, c] : r.tail) tail.push_back({word_json(w), cyclo_to_json(c)});
    rules.push_back({{"lead", word_json(r.lead)}, {"f", r.f}, {"tail", tail}});
  }
  std::filesystem::create_directories(p.parent_path());
  std::ofstream(p) << json{{"version", kVersion}, {"dimension", H.dim()}, {"rules", rules}}.dump() << "\n";
}

std::shared_ptr<QuasiHopfAlgebra> build_from(const DatumFile& d, long budget, const std::string& cache_dir,
                                             bool* hit = nullptr) {
  CocycleParams c = params_or_zero(d);
  if (cache_dir.empty()) return build(d.datum, d.lambda, d.mu, c, budget);
  auto p = cache_path(cache_dir, d);
  if (auto rules = cache_load(p)) {
    try {
      auto H = build(d.datum, d.lambda, d.mu, c, budget, &*rules);
      if (hit) *hit = true;
      return H;
    } catch (const DimensionMismatch&) {
      // stale or damaged cache entry: rebuild below
    }
  }
  auto H = build(d.datum, d.lambda, d.mu, c, budget);
  cache_store(p, *H);
  return H;
}

std::optional<EFPresentation> try_ef(const QuasiHopfAlgebra& H) {
  try {
    return ef_presentation(H);
  } catch (const NotDoubledDatum&) {
    return std::nullopt;
  }
}

// commands

int cmd_validate(const DatumFile& d) {
  DatumReport dr = validate_datum(d.datum);
  Report lr = validate_linking(d.datum, d.lambda), mr = validate_rootparams(d.datum, d.mu);
  print_report(dr, "datum");
  for (auto& ci : dr.components) {
    std::cout << "  component " << ci.comp.type << " on vertices";
    for (int v : ci.comp.vertices) std::cout << " " << v;
    std::cout << ": N = " << ci.N << "\n";
  }
  print_report(lr, "linking");
  print_report(mr, "root parameters");
  bool ok = dr.ok() && lr.ok() && mr.ok();
  if (dr.ok()) {
    GammaSet S = solve_gamma(d.datum);
    std::cout << "Gamma: " << (S.empty() ? "empty" : S.str()) << "\n";
    std::cout << "Gamma members all have c_i != 0: " << (S.all_c_nonzero() ? "yes" : "no") << "\n";
    auto sup = admissible_mu_support(d.datum);
    std::cout << "admissible mu support:";
    for (int i : sup) std::cout << " " << i;
    std::cout << "\n";
    std::cout << "dimension: " << dimension(d.datum).get_str() << "\n";
    if (d.c) {
      bool in = in_gamma(d.datum, *d.c);
      std::cout << d.c->str() << (in ? " is" : " is not") << " in Gamma\n";
      ok &= in;
    }
  }
  return ok ? 0 : 1;
}

int cmd_gamma(const DatumFile& d) {
  DatumReport dr = validate_datum(d.datum);
  if (!dr.ok()) {
    print_report(dr, "datum");
    return 1;
  }
  GammaSet S = solve_gamma(d.datum);
  if (S.empty()) {
    std::cout << "Gamma is empty\n";
    return 1;
  }
  std::cout << S.str() << "\n";
  std::cout << "size " << S.size().get_str() << "\n";
  if (auto c = S.canonical()) std::cout << "canonical nonzero member " << c->str() << "\n";
  return 0;
}

int cmd_cocycle(const DatumFile& d) {
  if (!d.c) throw Usage("cocycle test needs a \"c\" field");
  Cochain3 f = phi(*d.c);
  bool norm = is_normalized(f), cyc = is_3cocycle(f), ab = is_abelian(*d.c);
  std::cout << d.c->str() << "\n";
  std::cout << "normalized: " << (norm ? "yes" : "no") << "\n";
  std::cout << "3-cocycle: " << (cyc ? "yes" : "no") << "\n";
  std::cout << "abelian (c_rst = 0): " << (ab ? "yes" : "no") << "\n";
  CoboundaryResult fast = is_coboundary(f, true);
  std::cout << "coboundary: " << (fast.coboundary ? "yes" : "no") << " (" << fast.method << ")\n";
  if (d.datum.base.order() <= 32) {
    CoboundaryResult smith = is_coboundary(f, false);
    std::cout << "coboundary: " << (smith.coboundary ? "yes" : "no") << " (" << smith.method << ")\n";
    if (smith.coboundary != fast.coboundary) {
      std::cout << "coboundary methods disagree\n";
      return 1;
    }
  }
  bool in = in_gamma(d.datum, *d.c);
  std::cout << "in Gamma: " << (in ? "yes" : "no") << "\n";
  return norm && cyc ? 0 : 1;
}

int cmd_build(const DatumFile& d, long budget, const std::string& cache) {
  auto t0 = std::chrono::steady_clock::now();
  bool hit = false;
  auto H = build_from(d, budget, cache, &hit);
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << "dimension " << H->dim() << " (expected " << dimension(d.datum).get_str() << ")\n";
  std::cout << "rewrite rules " << H->rewriting().rule_count() << "\n";
  std::cout << "associator " << params_or_zero(d).str() << "\n";
  if (!cache.empty()) std::cout << "cache " << (hit ? "hit" : "stored") << "\n";
  std::cout << std::fixed << std::setprecision(2) << "build time " << s << " s\n";
  return 0;
}

int cmd_verify(const DatumFile& d, long budget, const std::string& cache) {
  auto H = build_from(d, budget, cache);
  std::cout << "dimension " << H->dim() << "\n";
  AxiomReport a = verify_all(*H);
  AxiomReport b = check_algebra(*H);
  print_report(a, "axioms");
  print_report(b, "algebra");
  bool ok = a.ok() && b.ok();
  if (auto P = try_ef(*H)) {
    print_report(P->relations, "E/F relations");
    ok &= P->relations.ok();
  }
  return ok ? 0 : 1;
}

int cmd_genuine(const DatumFile& d) {
  Verdict v = genuineness(d.datum, d.lambda, d.mu, params_or_zero(d), d.recipe_args);
  std::cout << (v.genuine ? "Genuine" : "Inconclusive") << "\n";
  if (v.genuine) std::cout << "certificate: " << v.certificate << "\n";
  for (auto& x : v.details) std::cout << "  " << x << "\n";
  return v.genuine ? 0 : 1;
}

json full_report(const DatumFile& d, const std::string& digest, long budget, bool timings, bool& ok) {
  json j;
  j["version"] = kVersion;
  j["input_digest"] = "sha256:" + digest;
  if (!d.datum.label.empty()) j["label"] = d.datum.label;
  if (!d.recipe.empty()) j["recipe"] = d.recipe;
  DatumReport dr = validate_datum(d.datum);
  Report val = dr;
  val.merge(validate_linking(d.datum, d.lambda));
  val.merge(validate_rootparams(d.datum, d.mu));
  j["validation"] = report_to_json(val);
  ok = val.ok();
  if (!dr.ok()) return j;
  GammaSet S = solve_gamma(d.datum);
  json g = {{"description", S.empty() ? "empty" : S.str()}, {"nonempty", !S.empty()}, {"all_c_nonzero", S.all_c_nonzero()}};
  CocycleParams c = params_or_zero(d);
  g["c"] = c.str();
  g["c_in_gamma"] = in_gamma(d.datum, c);
  j["gamma"] = g;
  j["dimension"] = dimension(d.datum).get_str();
  ok &= g["c_in_gamma"].get<bool>();
  if (!ok) return j;
  json t;
  auto t0 = std::chrono::steady_clock::now();
  try {
    auto H = build(d.datum, d.lambda, d.mu, c, budget);
    t["build_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    AxiomReport a = verify_all(*H), b = check_algebra(*H);
    a.merge(b);
    j["axioms"] = report_to_json(a);
    t["verify_s"] = a.seconds + b.seconds;
    ok &= a.ok();
    if (auto P = try_ef(*H)) {
      j["ef_presentation"] = {{"relations", report_to_json(P->relations)},
                              {"closed_forms", report_to_json(P->closed_forms)},
                              {"u_plus", P->u_plus},
                              {"u_minus", P->u_minus}};
      ok &= P->relations.ok();
    }
  } catch (const BudgetExceeded& e) {
    j["axioms"] = {{"skipped", e.what()}};
  }
  Verdict v = genuineness(d.datum, d.lambda, d.mu, c, d.recipe_args);
  j["genuineness"] = {{"verdict", v.genuine ? "genuine" : "inconclusive"}, {"details", v.details}};
  if (v.genuine) j["genuineness"]["certificate"] = v.certificate;
  if (timings) j["timings"] = t;
  return j;
}

void print_text(const json& j) {
  std::cout << j["version"].get<std::string>() << "  input " << j["input_digest"].get<std::string>() << "\n";
  if (j.contains("label")) std::cout << "label: " << j["label"].get<std::string>() << "\n";
  if (j.contains("recipe")) std::cout << "recipe: " << j["recipe"].get<std::string>() << "\n";
  auto section = [](const std::string& name, const json& r) {
    long n = 0, bad = 0;
    for (auto& c : r["checks"]) ++n, bad += !c["ok"].get<bool>();
    std::cout << name << ": " << (bad ? "FAIL" : "ok") << " (" << n - bad << "/" << n << ")\n";
    for (auto& c : r["checks"])
      if (!c["ok"].get<bool>())
        std::cout << "  FAIL " << c["name"].get<std::string>()
                  << (c.contains("witness") ? ": " + c["witness"].get<std::string>() : "") << "\n";
    if (r.contains("notes"))
      for (auto& x : r["notes"]) std::cout << "  note: " << x.get<std::string>() << "\n";
  };
  section("validation", j["validation"]);
  if (j.contains("gamma")) {
    std::cout << "Gamma: " << j["gamma"]["description"].get<std::string>() << "\n";
    std::cout << j["gamma"]["c"].get<std::string>() << (j["gamma"]["c_in_gamma"].get<bool>() ? " in" : " not in")
              << " Gamma\n";
  }
  if (j.contains("dimension")) std::cout << "dimension: " << j["dimension"].get<std::string>() << "\n";
  if (j.contains("axioms")) {
    if (j["axioms"].contains("skipped")) std::cout << "axioms: skipped, " << j["axioms"]["skipped"].get<std::string>() << "\n";
    else section("axioms", j["axioms"]);
  }
  if (j.contains("ef_presentation")) {
    section("E/F relations", j["ef_presentation"]["relations"]);
    section("E/F closed forms", j["ef_presentation"]["closed_forms"]);
  }
  if (j.contains("genuineness")) {
    auto& g = j["genuineness"];
    std::cout << "genuineness: " << g["verdict"].get<std::string>() << "\n";
    if (g.contains("certificate")) std::cout << "  certificate: " << g["certificate"].get<std::string>() << "\n";
    for (auto& x : g["details"]) std::cout << "  " << x.get<std::string>() << "\n";
  }
  if (j.contains("timings"))
    for (auto& [k, v] : j["timings"].items()) std::cout << k << ": " << v.get<double>() << "\n";
}

std::vector<long> parse_list(const std::string& s) {
  std::vector<long> v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) v.push_back(std::stol(tok));
  return v;
}

IntMatrix parse_matrix(const std::string& s) {
  IntMatrix m;
  std::stringstream ss(s);
  std::string row;
  while (std::getline(ss, row, ';')) m.push_back(parse_list(row));
  return m;
}

void write_datum(const FactoryOutput& f, const std::string& out) {
  std::string text = to_json(from_factory(f)).dump(2) + "\n";
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream o(out);
  if (!o) throw Usage("cannot write " + out);
  o << text;
  std::cout << "wrote " << out << " (" << f.recipe << ")\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quasi-Hopf algebras of Cartan type: build, verify and certify"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.footer("Exit codes: 0 pass, 1 mathematical failure, 2 input or usage error (including budget overruns).\n"
             "QHA_BUDGET sets the dimension budget; --budget takes precedence.");

  std::string file, cache, format = "text", out;
  long budget = 0;
  bool timings = false;

  auto* datum = app.add_subcommand("datum", "datum file commands");
  datum->require_subcommand(1);
  auto* validate = datum->add_subcommand("validate", "validate the datum, linking and root parameters; solve Gamma");
  validate->add_option("file", file)->required();

  auto* gamma = app.add_subcommand("gamma", "Gamma(D) commands");
  gamma->require_subcommand(1);
  auto* gsolve = gamma->add_subcommand("solve", "solve the congruences defining Gamma(D)");
  gsolve->add_option("file", file)->required();

  auto* cocycle = app.add_subcommand("cocycle", "3-cocycle commands");
  cocycle->require_subcommand(1);
  auto* ctest = cocycle->add_subcommand("test", "cocycle, abelian, coboundary and Gamma tests for c");
  ctest->add_option("file", file)->required();

  auto* buildc = app.add_subcommand("build", "complete the rewrite system and enumerate the basis");
  buildc->add_option("file", file)->required();
  buildc->add_option("--cache", cache, "directory for completed rewrite systems");
  buildc->add_option("--budget", budget, "dimension budget");

  auto* verify = app.add_subcommand("verify", "build and check every quasi-Hopf axiom");
  verify->add_option("file", file)->required();
  verify->add_option("--cache", cache, "directory for completed rewrite systems");
  verify->add_option("--budget", budget, "dimension budget");

  auto* genuine = app.add_subcommand("genuine", "genuineness certificate");
  genuine->add_option("file", file)->required();

  auto* report = app.add_subcommand("report", "full report");
  report->add_option("file", file)->required();
  report->add_option("--format", format, "text or structured")->check(CLI::IsMember({"text", "structured"}));
  report->add_option("--budget", budget, "dimension budget");
  report->add_flag("--timings", timings, "include wall-clock timings (breaks byte-for-byte reproducibility)");

  auto* factory = app.add_subcommand("factory", "write a datum file for one of the example families");
  factory->require_subcommand(1);
  long N = 3, d = 1, c = 0, m = 3, n = 1, p = 1, q = 1, l = 1;
  std::string s_list, r_list, type, cartan = "2", k_list;

  auto* f_cyclic = factory->add_subcommand("cyclic", "rank-n datum over Z_m");
  f_cyclic->add_option("--m", m)->required();
  f_cyclic->add_option("--s", s_list, "h_i as exponents of the generator of Z_{m^2}, comma separated")->required();
  f_cyclic->add_option("--r", r_list, "chi_i(big generator) = zeta_{m^2}^{r_i}, comma separated")->required();
  f_cyclic->add_option("--cartan", cartan, "Cartan matrix, rows separated by ';'");
  f_cyclic->add_option("-o", out);

  auto* f_sl2 = factory->add_subcommand("sl2-quasi", "quasi-version of u_q(sl2)");
  f_sl2->add_option("--N", N)->required();
  f_sl2->add_option("--d", d)->required();
  f_sl2->add_option("--c", c)->required();
  f_sl2->add_option("-o", out);

  auto* f_rank2 = factory->add_subcommand("rank2", "connected rank-2 datum (A2, B2, G2)");
  f_rank2->add_option("--type", type)->required();
  f_rank2->add_option("--m", m)->required();
  f_rank2->add_option("--n", n)->required();
  f_rank2->add_option("--d", d)->required();
  f_rank2->add_option("-o", out);

  auto* f_small = factory->add_subcommand("small-qgroup", "small quasi-quantum group over Z_m^n, m = pN");
  f_small->add_option("--cartan", cartan, "Cartan matrix, rows separated by ';'");
  f_small->add_option("--N", N)->required();
  f_small->add_option("--p", p)->required();
  f_small->add_option("--l", l)->required();
  f_small->add_option("--k", k_list, "k_i, comma separated")->required();
  f_small->add_option("-o", out);

  auto* f_series = factory->add_subcommand("series", "A/B/C/D/E/F series datum");
  f_series->add_option("--type", type)->required();
  f_series->add_option("--n", n)->required();
  f_series->add_option("--p", p)->required();
  f_series->add_option("--q", q)->required();
  f_series->add_option("--d", d)->required();
  f_series->add_option("-o", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*factory) {
      if (*f_cyclic) {
        auto s = parse_list(s_list), r = parse_list(r_list);
        IntMatrix A = f_cyclic->get_option("--cartan")->count() ? parse_matrix(cartan) : IntMatrix{};
        write_datum(factory_cyclic(m, s, r, A), out);
      } else if (*f_sl2) {
        write_datum(factory_sl2_quasi(N, d, c), out);
      } else if (*f_rank2) {
        write_datum(factory_rank2(type, m, n, d), out);
      } else if (*f_small) {
        write_datum(factory_small_qgroup(parse_matrix(cartan), N, p, l, parse_list(k_list)), out);
      } else if (*f_series) {
        write_datum(factory_series(type, static_cast<int>(n), p, q, d), out);
      }
      return 0;
    }

    std::string raw = slurp(file);
    DatumFile df;
    try {
      df = parse_datum(json::parse(raw));
    } catch (const json::exception& e) {
      throw SchemaError(e.what());
    }
    long b = effective_budget(budget, df);
    if (*validate) return cmd_validate(df);
    if (*gsolve) return cmd_gamma(df);
    if (*ctest) return cmd_cocycle(df);
    if (*buildc) return cmd_build(df, b, cache);
    if (*verify) return cmd_verify(df, b, cache);
    if (*genuine) return cmd_genuine(df);
    if (*report) {
      bool ok = true;
      json j = full_report(df, sha256(raw), b, timings, ok);
      if (format == "structured")
        std::cout << j.dump(2) << "\n";
      else
        print_text(j);
      return ok ? 0 : 1;
    }
  } catch (const BudgetExceeded& e) {
    std::cerr << "qha: budget exceeded: " << e.what() << "\n"
              << "raise it with --budget N or QHA_BUDGET=N\n";
    return 2;
  } catch (const SchemaError& e) {
    std::cerr << "qha: " << e.what() << "\n\n" << datum_schema() << "\n";
    return 2;
  } catch (const Usage& e) {
    std::cerr << "qha: " << e.what() << "\n\n" << datum_schema() << "\n";
    return 2;
  } catch (const InvalidFactoryParams& e) {
    std::cerr << "qha: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "qha: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument&) {
    std::cerr << "qha: bad number in a list argument\n";
    return 2;
  }
  return 0;
}
