#include <fnmatch.h>

#include <atomic>
#include <iostream>
#include <mutex>
#include <set>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "nakai/catalog.hpp"
#include "nakai/remark1.hpp"

using namespace nakai;
using json = nlohmann::ordered_json;

namespace {

struct Config {
  std::vector<std::string> cases{"all"};
  std::size_t trials = 3;
  std::uint64_t seed = 0;
  long p_max = 6;
  long q_max = 6;
  unsigned dcap = kDefaultDCap;
  bool json = false;
  bool fail_fast = false;
  bool search_witness = false;
  bool printed = false;
  unsigned jobs = 0;
  std::string catalog_dir;
};

struct Job {
  const CaseSpec* spec;
  std::size_t branch;
  std::map<std::string, long> structural;
  std::size_t trial;
};

class ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<const CaseSpec*> select_cases(const std::vector<CaseSpec>& catalog, const std::vector<std::string>& patterns) {
  std::vector<const CaseSpec*> out;
  std::set<std::string> taken;
  for (const auto& raw : patterns) {
    std::stringstream ss(raw);
    std::string pat;
    while (std::getline(ss, pat, ',')) {
      if (pat.empty()) continue;
      bool hit = false;
      for (const auto& c : catalog) {
        bool match = pat == "all" || fnmatch(pat.c_str(), c.id.c_str(), 0) == 0 || pat == c.family;
        if (!match) continue;
        hit = true;
        if (taken.insert(c.id).second) out.push_back(&c);
      }
      if (!hit) throw ConfigError("unknown case id '" + pat + "'");
    }
  }
  std::sort(out.begin(), out.end(), [&](const CaseSpec* a, const CaseSpec* b) { return a < b; });
  return out;
}

std::vector<Job> plan(const std::vector<const CaseSpec*>& cases, const Config& cfg) {
  std::vector<Job> jobs;
  StructuralRange range{cfg.p_max, cfg.q_max};
  for (const CaseSpec* c : cases) {
    std::vector<std::map<std::string, long>> points;
    if (c->structural) {
      for (long v : structural_values(*c, range)) points.push_back({{c->structural->name, v}});
    } else {
      points.push_back({});
    }
    for (const auto& pt : points)
      for (std::size_t b : expand_family(*c, pt))
        for (std::size_t t = 0; t < cfg.trials; ++t) jobs.push_back({c, b, pt, t});
  }
  return jobs;
}

template <typename Fn>
void run_parallel(std::size_t count, unsigned jobs, const std::atomic<bool>& stop, Fn fn) {
  unsigned workers = jobs ? jobs : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; !stop && (i = next++) < count;) fn(i);
    });
  for (auto& t : pool) t.join();
}

std::string structural_text(const std::map<std::string, long>& s) {
  std::string out;
  for (const auto& [k, v] : s) out += (out.empty() ? "" : ",") + k + "=" + std::to_string(v);
  return out;
}

std::string bindings_text(const std::map<std::string, std::string>& b) {
  std::string out;
  for (const auto& [k, v] : b) out += (out.empty() ? "" : ",") + k + "=" + v;
  return out;
}

VerificationReport failed_report(const Job& job, const std::string& error) {
  VerificationReport r;
  r.case_id = job.spec->id;
  r.branch = job.spec->branches[job.branch].condition_text;
  r.route = route_name(job.spec->branches[job.branch].route);
  r.structural = job.structural;
  r.error = error;
  return r;
}

VerificationReport run_job(const Job& job, const Config& cfg) {
  try {
    Specialization sp = specialize_case(*job.spec, job.branch, job.structural, cfg.seed, job.trial);
    ConcreteCase cc = instantiate(*job.spec, sp, cfg.printed);
    VerificationReport r = run_case(cc, cfg.dcap);
    if (cfg.search_witness && cc.route == Route::Beta && r.congruence_ok && !r.nonmembership && r.error.empty()) {
      Expectations ex;
      ex.mu = cc.mu;
      ex.tau = cc.tau;
      for (std::size_t i = 1; i <= cc.beta.size(); ++i) {
        if (i == cc.witness) continue;
        VerificationReport alt = verify_case(cc.f, cc.beta, i, ex, cfg.dcap);
        if (alt.nonmembership) {
          r.notes.push_back("catalog witness " + std::to_string(cc.witness) + " fails; witness " + std::to_string(i) +
                            " succeeds");
          break;
        }
      }
    }
    return r;
  } catch (const std::exception& e) {
    return failed_report(job, e.what());
  }
}

void print_report(const VerificationReport& r) {
  auto opt = [](const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : std::string("-"); };
  std::cout << (r.pass ? "PASS " : "FAIL ") << r.case_id << " [" << r.branch << "]";
  if (!r.structural.empty()) std::cout << " " << structural_text(r.structural);
  if (!r.bindings.empty()) std::cout << " {" << bindings_text(r.bindings) << "}";
  std::cout << " route=" << r.route << " mu=" << opt(r.mu_observed) << "/" << opt(r.mu_expected)
            << " tau=" << opt(r.tau_observed) << "/" << opt(r.tau_expected);
  if (r.route == "beta") {
    std::cout << " congruence=" << (r.congruence_ok ? "ok" : "FAILED") << " witness=" << opt(r.witness)
              << " nonmembership=" << (r.nonmembership ? "true" : "false");
  } else if (r.route == "simple-elliptic") {
    std::cout << " relation=" << (r.congruence_ok ? "ok" : "FAILED") << " section=" << opt(r.witness)
              << " nonmembership=" << (r.nonmembership ? "true" : "false");
  }
  std::cout << "\n";
  if (!r.f.empty() && !r.pass) std::cout << "  f = " << r.f << "\n";
  for (const auto& n : r.notes) std::cout << "  note: " << n << "\n";
  if (!r.error.empty()) std::cout << "  error: " << r.error << "\n";
}

int cmd_verify(const Config& cfg) {
  auto catalog = load_catalog(cfg.catalog_dir);
  auto jobs = plan(select_cases(catalog, cfg.cases), cfg);
  std::vector<std::optional<VerificationReport>> results(jobs.size());
  std::atomic<bool> stop{false};
  run_parallel(jobs.size(), cfg.jobs, stop, [&](std::size_t i) {
    results[i] = run_job(jobs[i], cfg);
    if (cfg.fail_fast && !results[i]->pass) stop = true;
  });
  std::vector<VerificationReport> done;
  for (auto& r : results)
    if (r) done.push_back(std::move(*r));
  bool ok = done.size() == jobs.size();
  for (const auto& r : done) ok = ok && r.pass;
  if (cfg.json) {
    std::cout << reports_to_json(done) << "\n";
  } else {
    for (const auto& r : done) print_report(r);
    std::size_t passed = std::count_if(done.begin(), done.end(), [](const auto& r) { return r.pass; });
    std::cout << passed << "/" << jobs.size() << " passed\n";
  }
  return ok ? 0 : 1;
}

int cmd_table(const Config& cfg) {
  auto catalog = load_catalog(cfg.catalog_dir);
  auto jobs = plan(select_cases(catalog, cfg.cases), cfg);
  struct Row {
    std::string id, branch, structural, bindings;
    std::size_t mu = 0, tau = 0;
    std::optional<std::size_t> mu_exp, tau_exp;
    std::string error;
    bool ok = false;
  };
  std::vector<std::optional<Row>> rows(jobs.size());
  std::atomic<bool> stop{false};
  run_parallel(jobs.size(), cfg.jobs, stop, [&](std::size_t i) {
    const Job& job = jobs[i];
    Row row;
    row.id = job.spec->id;
    row.branch = job.spec->branches[job.branch].condition_text;
    row.structural = structural_text(job.structural);
    try {
      Specialization sp = specialize_case(*job.spec, job.branch, job.structural, cfg.seed, job.trial);
      ConcreteCase cc = instantiate(*job.spec, sp);
      for (const auto& [k, v] : sp.bindings) row.bindings += (row.bindings.empty() ? "" : ",") + k + "=" + to_string(v);
      row.mu_exp = cc.mu;
      row.tau_exp = cc.tau;
      row.mu = milnor_number(cc.f, cfg.dcap);
      row.tau = tjurina_number(cc.f, cfg.dcap);
      row.ok = row.mu == cc.mu && row.tau == cc.tau;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    if (cfg.fail_fast && !row.ok) stop = true;
    rows[i] = row;
  });
  bool ok = true;
  json out = json::array();
  for (const auto& r : rows) {
    if (!r) {
      ok = false;
      continue;
    }
    ok = ok && r->ok;
    if (cfg.json) {
      json j;
      j["case"] = r->id;
      j["branch"] = r->branch;
      j["structural"] = r->structural;
      j["bindings"] = r->bindings;
      j["mu"] = {{"observed", r->mu}, {"expected", r->mu_exp ? json(*r->mu_exp) : json(nullptr)}};
      j["tau"] = {{"observed", r->tau}, {"expected", r->tau_exp ? json(*r->tau_exp) : json(nullptr)}};
      j["error"] = r->error;
      j["ok"] = r->ok;
      out.push_back(j);
    } else {
      std::printf("%-4s %-10s %-34s %-6s mu %3zu/%-3s tau %3zu/%-3s %s\n", r->ok ? "ok" : "BAD", r->id.c_str(),
                  r->branch.c_str(), r->structural.c_str(), r->mu, r->mu_exp ? std::to_string(*r->mu_exp).c_str() : "-",
                  r->tau, r->tau_exp ? std::to_string(*r->tau_exp).c_str() : "-", r->error.c_str());
    }
  }
  if (cfg.json) std::cout << out.dump(2) << "\n";
  return ok ? 0 : 1;
}

int cmd_invariants(const std::string& expr_text, std::vector<std::string> vars, const std::vector<std::string>& sets,
                   const Config& cfg) {
  Bindings bindings;
  for (const auto& s : sets) {
    auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("--set expects name=value, got '" + s + "'");
    bindings[s.substr(0, eq)] = evaluate_constant(parse_expression(s.substr(eq + 1)), {});
  }
  ExprPtr e = parse_expression(expr_text);
  if (vars.empty()) {
    std::set<std::string> ids;
    collect_identifiers(e, ids);
    for (const auto& id : ids)
      if (!bindings.count(id)) vars.push_back(id);
    if (vars.empty()) vars.push_back("x");
  }
  RingPtr ring = make_ring(vars);
  Polynomial f = evaluate(e, ring, bindings);
  try {
    QuotientPtr t = tjurina_quotient(f, cfg.dcap);
    std::size_t mu = milnor_number(f, cfg.dcap);
    if (cfg.json) {
      json j;
      j["f"] = f.to_string();
      j["mu"] = mu;
      j["tau"] = t->dimension();
      json basis = json::array();
      for (const auto& m : t->basis()) basis.push_back(monomial_to_string(m, *ring));
      j["basis"] = basis;
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "f = " << f.to_string() << "\nmu = " << mu << "\ntau = " << t->dimension() << "\nbasis = {";
      bool first = true;
      for (const auto& m : t->basis()) {
        std::cout << (first ? "" : ", ") << monomial_to_string(m, *ring);
        first = false;
      }
      std::cout << "}\n";
    }
  } catch (const NotFiniteColength& ex) {
    std::cerr << "not an isolated singularity: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}

int cmd_remark1(const Config& cfg) {
  Remark1Report r = run_remark1();
  bool ok = r.der1_dimension == 5 && r.der1_listed_ok && r.listed_span_matches && r.identity_first_order &&
            r.pe_in_Der2 && !r.pe_in_der2;
  if (cfg.json) {
    json j;
    j["algebra_dimension"] = r.algebra_dimension;
    j["der1_dimension"] = r.der1_dimension;
    j["der1_listed_ok"] = r.der1_listed_ok;
    j["der2_small_dimension"] = r.der2_small_dimension;
    j["der2_dimension"] = r.der2_dimension;
    j["listed_generators_dimension"] = r.listed_generators_dimension;
    j["listed_extras_distinct"] = r.listed_extras_distinct;
    j["listed_span_matches"] = r.listed_span_matches;
    j["pe"] = r.pe;
    j["identity_first_order"] = r.identity_first_order;
    j["identity_second_order"] = r.identity_second_order;
    j["pe_in_Der2"] = r.pe_in_Der2;
    j["pe_in_der2"] = r.pe_in_der2;
    j["pass"] = ok;
    std::cout << j.dump(2) << "\n";
  } else {
    auto yn = [](bool b) { return b ? "yes" : "no"; };
    std::cout << "dim A = " << r.algebra_dimension << "\n"
              << "dim Der^1(A) = " << r.der1_dimension << " (listed basis spans it: " << yn(r.der1_listed_ok) << ")\n"
              << "dim der^2(A) = " << r.der2_small_dimension << ", dim Der^2(A) = " << r.der2_dimension << "\n"
              << "Der^1 + listed generators: dim " << r.listed_generators_dimension << " with "
              << r.listed_extras_distinct << " distinct extras, equals der^2: " << yn(r.listed_span_matches) << "\n"
              << "9E^4-36E^3+41E^2-14E = " << r.pe << "\n"
              << "equals -4(y^2 d_y + 1/3 x^2 d_x): " << yn(r.identity_first_order) << "\n"
              << "equals -4(y^2 d_y^2 + 1/3 x^2 d_x^2): " << yn(r.identity_second_order) << "\n"
              << "in Der^2(A): " << yn(r.pe_in_Der2) << "\n"
              << "in der^2(A): " << yn(r.pe_in_der2) << "\n";
    if (!r.identity_first_order) std::cout << "FAILED: first-order operator identity does not hold\n";
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of derivation certificates for hypersurface singularities"};
  app.require_subcommand(1);
  Config cfg;
  if (const char* env = std::getenv("NAKAI_CATALOG_DIR"); env && *env) cfg.catalog_dir = env;
  else cfg.catalog_dir = default_catalog_dir();

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--dcap", cfg.dcap, "Truncation degree cap")->check(CLI::Range(4u, 200u));
    sub->add_flag("--json", cfg.json, "Machine-readable output");
  };
  auto add_selection = [&](CLI::App* sub) {
    add_common(sub);
    sub->add_option("--case", cfg.cases, "Case ids, globs or 'all'")->delimiter(',');
    sub->add_option("--trials", cfg.trials, "Specializations per branch")->check(CLI::Range(std::size_t{1}, std::size_t{1000}));
    sub->add_option("--seed", cfg.seed, "Random seed");
    sub->add_option("--p-max", cfg.p_max, "Largest p for p-series")->check(CLI::Range(0L, 50L));
    sub->add_option("--q-max", cfg.q_max, "Largest q for q-series")->check(CLI::Range(1L, 25L));
    sub->add_flag("--fail-fast", cfg.fail_fast, "Stop scheduling after the first failure");
    sub->add_option("-j,--jobs", cfg.jobs, "Worker threads (0 = all cores)");
    sub->add_option("--catalog", cfg.catalog_dir, "Catalog directory");
  };

  auto* verify = app.add_subcommand("verify", "Verify catalog cases");
  add_selection(verify);
  verify->add_flag("--search-witness", cfg.search_witness, "Try every diagonal index when the catalog witness fails");
  verify->add_flag("--printed", cfg.printed, "Use beta entries as originally printed where the catalog keeps a correction");

  auto* table = app.add_subcommand("table", "Recompute Milnor and Tjurina numbers for catalog branches");
  add_selection(table);

  auto* inv = app.add_subcommand("invariants", "Milnor and Tjurina numbers of a polynomial");
  add_common(inv);
  std::string expr;
  std::vector<std::string> vars, sets;
  inv->add_option("-f", expr, "Polynomial expression")->required();
  inv->add_option("--vars", vars, "Ring variables (default: identifiers not bound by --set)")->delimiter(',');
  inv->add_option("--set", sets, "Parameter binding name=value");

  auto* remark = app.add_subcommand("remark1", "Derivations of Q[x,y]/(4x^3+y^2, xy)");
  add_common(remark);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*verify) return cmd_verify(cfg);
    if (*table) return cmd_table(cfg);
    if (*inv) return cmd_invariants(expr, vars, sets, cfg);
    if (*remark) return cmd_remark1(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CatalogError& e) {
    std::cerr << "catalog error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const SpecializationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
