#include "nakai/criterion.hpp"

#include <chrono>

#include "json.hpp"

namespace nakai {

bool is_symmetric(const BetaMatrix& beta) {
  for (std::size_t i = 0; i < beta.size(); ++i) {
    if (beta[i].size() != beta.size()) return false;
    for (std::size_t j = i + 1; j < beta.size(); ++j)
      if (beta[i][j] != beta[j][i]) return false;
  }
  return true;
}

namespace {

std::vector<Polynomial> f_jac_squared(const Polynomial& f) {
  auto jac = jacobian_ideal(f);
  std::vector<Polynomial> gens{f};
  for (std::size_t i = 0; i < jac.size(); ++i)
    for (std::size_t j = i; j < jac.size(); ++j) gens.push_back(jac[i] * jac[j]);
  return gens;
}

std::vector<Coset> congruence_in(const BetaMatrix& beta, const Polynomial& f, const QuotientPtr& q) {
  auto jac = jacobian_ideal(f);
  std::vector<Coset> out;
  for (const auto& row : beta) {
    Polynomial acc(f.ring());
    for (std::size_t j = 0; j < row.size(); ++j) acc += row[j] * jac[j];
    out.emplace_back(q, acc);
  }
  return out;
}

bool nonmember_in(const Polynomial& p, const QuotientPtr& tjurina, const std::vector<Derivation>& kernel,
                  std::size_t i) {
  std::vector<Polynomial> comps;
  for (const auto& d : kernel)
    if (!d.coeffs[i].is_zero()) comps.push_back(d.coeffs[i]);
  std::vector<Polynomial> squares;
  for (std::size_t a = 0; a < comps.size(); ++a)
    for (std::size_t b = a; b < comps.size(); ++b) squares.push_back(comps[a] * comps[b]);
  QuotientIdeal ideal(tjurina, squares);
  return !ideal.contains(p);
}

}  // namespace

bool listed_kernel_matches(const QuotientPtr& tjurina, const Polynomial& f, const std::vector<Derivation>& kernel,
                           const std::vector<std::vector<Polynomial>>& listed) {
  auto hess = hessian(f);
  for (const auto& v : listed)
    for (const auto& row : hess) {
      Polynomial acc(f.ring());
      for (std::size_t s = 0; s < row.size(); ++s) acc += row[s] * v[s];
      if (!tjurina->contains(acc)) return false;
    }
  return listed.size() == kernel.size() && span_dimension(tjurina, listed) == kernel.size();
}

std::vector<Coset> check_congruence(const BetaMatrix& beta, const Polynomial& f, unsigned d_cap) {
  if (!is_symmetric(beta)) throw PreconditionError("beta matrix is not symmetric");
  return congruence_in(beta, f, artinian_quotient(f_jac_squared(f), d_cap));
}

bool check_nonmembership(const BetaMatrix& beta, const Polynomial& f, std::size_t i,
                         const std::vector<Derivation>& kernel, unsigned d_cap) {
  auto q = kernel.empty() ? tjurina_quotient(f, d_cap) : kernel.front().parent;
  return nonmember_in(beta[i][i], q, kernel, i);
}

bool outside_bound(const Polynomial& p, const Polynomial& f, const std::vector<Polynomial>& bound, unsigned d_cap) {
  std::vector<Polynomial> gens = tjurina_generators(f);
  gens.insert(gens.end(), bound.begin(), bound.end());
  return !artinian_quotient(gens, d_cap)->contains(p);
}

VerificationReport verify_case(const Polynomial& f, const BetaMatrix& beta, std::size_t witness,
                               const Expectations& expect, unsigned d_cap) {
  auto start = std::chrono::steady_clock::now();
  VerificationReport r;
  r.route = "beta";
  r.f = f.to_string();
  r.witness = witness;
  r.mu_expected = expect.mu;
  r.tau_expected = expect.tau;
  try {
    if (witness < 1 || witness > f.nvars()) throw PreconditionError("witness index out of range");
    if (beta.size() != f.nvars() || !is_symmetric(beta)) throw PreconditionError("beta matrix is not symmetric n x n");
    r.mu_observed = milnor_number(f, d_cap);
    auto tjurina = tjurina_quotient(f, d_cap);
    r.tau_observed = tjurina->dimension();
    auto kernel = hess_kernel(tjurina, f);
    r.kernel_dimension = kernel.size();
    if (!expect.listed_kernel.empty()) {
      r.listed_kernel_count = expect.listed_kernel.size();
      r.listed_kernel_ok = listed_kernel_matches(tjurina, f, kernel, expect.listed_kernel);
    }
    auto residuals = congruence_in(beta, f, artinian_quotient(f_jac_squared(f), d_cap));
    r.congruence_ok = true;
    for (const auto& c : residuals) {
      r.residuals.push_back(c.rep().to_string());
      if (!c.is_zero()) r.congruence_ok = false;
    }
    std::size_t i = witness - 1;
    r.nonmembership = nonmember_in(beta[i][i], tjurina, kernel, i);
    r.bound_used = "K_" + std::to_string(witness) + "^2 + (f) + J(f)";
    if (!expect.declared_bound.empty())
      r.declared_bound_nonmembership = outside_bound(beta[i][i], f, expect.declared_bound, d_cap);
    bool invariants_ok = (!expect.mu || *expect.mu == *r.mu_observed) && (!expect.tau || *expect.tau == *r.tau_observed);
    if (!invariants_ok) r.notes.push_back("invariant mismatch");
    r.pass = r.congruence_ok && r.nonmembership && invariants_ok;
  } catch (const std::exception& e) {
    r.error = e.what();
    r.pass = false;
  }
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

Polynomial determinant(const std::vector<std::vector<Polynomial>>& m) {
  std::size_t n = m.size();
  if (n == 0) throw Error("determinant of an empty matrix");
  if (n == 1) return m[0][0];
  Polynomial acc(m[0][0].ring());
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c].is_zero()) continue;
    std::vector<std::vector<Polynomial>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Polynomial> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(std::move(row));
    }
    Polynomial t = m[0][c] * determinant(minor);
    if (c % 2)
      acc -= t;
    else
      acc += t;
  }
  return acc;
}

Polynomial hessian_cofactor(const Polynomial& f, std::size_t i, std::size_t j) {
  auto h = hessian(f);
  std::size_t n = h.size();
  if (n == 1) return Polynomial::constant(f.ring(), 1);
  std::vector<std::vector<Polynomial>> minor;
  for (std::size_t r = 0; r < n; ++r) {
    if (r == i) continue;
    std::vector<Polynomial> row;
    for (std::size_t c = 0; c < n; ++c)
      if (c != j) row.push_back(h[r][c]);
    minor.push_back(std::move(row));
  }
  Polynomial d = determinant(minor);
  return (i + j) % 2 ? -d : d;
}

VerificationReport verify_simple_elliptic(const Polynomial& f, const WeightVector& w, std::size_t s,
                                          const Expectations& expect, unsigned d_cap) {
  auto start = std::chrono::steady_clock::now();
  VerificationReport r;
  r.route = "simple-elliptic";
  r.f = f.to_string();
  r.witness = s + 1;
  r.mu_expected = expect.mu;
  r.tau_expected = expect.tau;
  try {
    std::size_t n = f.nvars();
    if (s >= n) throw PreconditionError("section variable out of range");
    if (!weighted_degree_check(f, w)) throw PreconditionError("polynomial is not weighted homogeneous for the weights");
    r.mu_observed = milnor_number(f, d_cap);
    r.tau_observed = tjurina_number(f, d_cap);
    auto jac = jacobian_ideal(f);
    auto milnor = milnor_quotient(f, d_cap);
    // Section {x_s = 0} must have an isolated singularity.
    std::vector<Polynomial> section{Polynomial::variable(f.ring(), s)};
    for (std::size_t i = 0; i < n; ++i)
      if (i != s) section.push_back(jac[i]);
    try {
      artinian_quotient(section, d_cap);
    } catch (const NotFiniteColength&) {
      throw PreconditionError("hyperplane section does not have an isolated singularity");
    }
    std::vector<std::vector<Polynomial>> cof(n, std::vector<Polynomial>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) cof[i][j] = hessian_cofactor(f, i, j);
    bool relation = true;
    for (std::size_t i = 0; i < n && relation; ++i)
      for (std::size_t j = 0; j < n && relation; ++j)
        for (std::size_t k = 0; k < n && relation; ++k) {
          Polynomial xi = Polynomial::term(f.ring(), Monomial::var(i), w.weights[i]);
          Polynomial xj = Polynomial::term(f.ring(), Monomial::var(j), w.weights[j]);
          if (!milnor->contains(xi * cof[j][k] - xj * cof[i][k])) relation = false;
        }
    if (!relation) r.notes.push_back("cofactor relation fails");
    r.congruence_ok = relation;
    std::vector<Polynomial> bound{pow(Polynomial::variable(f.ring(), s), 2)};
    for (std::size_t i = 0; i < n; ++i)
      if (i != s) bound.push_back(jac[i]);
    Polynomial ds = Polynomial::term(f.ring(), Monomial::var(s), w.weights[s]) * cof[s][s];
    r.nonmembership = !artinian_quotient(bound, d_cap)->contains(ds);
    r.bound_used = "(x_s^2) + (f_xi : i != s)";
    bool invariants_ok = (!expect.mu || *expect.mu == *r.mu_observed) && (!expect.tau || *expect.tau == *r.tau_observed);
    if (!invariants_ok) r.notes.push_back("invariant mismatch");
    r.pass = relation && r.nonmembership && invariants_ok;
  } catch (const std::exception& e) {
    r.error = e.what();
    r.pass = false;
  }
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

namespace {

nlohmann::ordered_json to_json(const VerificationReport& r, bool timing) {
  nlohmann::ordered_json j;
  j["case"] = r.case_id;
  j["branch"] = r.branch;
  j["route"] = r.route;
  j["structural"] = r.structural;
  j["bindings"] = r.bindings;
  j["f"] = r.f;
  auto opt = [](const std::optional<std::size_t>& v) -> nlohmann::ordered_json {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
  };
  j["mu"] = {{"observed", opt(r.mu_observed)}, {"expected", opt(r.mu_expected)}};
  j["tau"] = {{"observed", opt(r.tau_observed)}, {"expected", opt(r.tau_expected)}};
  j["kernel_dimension"] = opt(r.kernel_dimension);
  j["listed_kernel"] = {{"count", opt(r.listed_kernel_count)},
                        {"ok", r.listed_kernel_ok ? nlohmann::ordered_json(*r.listed_kernel_ok) : nullptr}};
  j["residuals"] = r.residuals;
  j["congruence"] = r.congruence_ok;
  j["witness"] = opt(r.witness);
  j["nonmembership"] = r.nonmembership;
  j["bound_used"] = r.bound_used;
  j["declared_bound_nonmembership"] =
      r.declared_bound_nonmembership ? nlohmann::ordered_json(*r.declared_bound_nonmembership) : nullptr;
  j["notes"] = r.notes;
  j["error"] = r.error.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(r.error);
  if (timing) j["elapsed_ms"] = r.elapsed_ms;
  j["pass"] = r.pass;
  return j;
}

}  // namespace

std::string report_to_json(const VerificationReport& r, bool include_timing) {
  return to_json(r, include_timing).dump(2);
}

std::string reports_to_json(const std::vector<VerificationReport>& rs, bool include_timing) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rs) arr.push_back(to_json(r, include_timing));
  return arr.dump(2);
}

}  // namespace nakai
