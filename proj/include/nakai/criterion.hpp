#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nakai/derivation.hpp"
#include "nakai/quotient.hpp"

namespace nakai {

using BetaMatrix = std::vector<std::vector<Polynomial>>;

bool is_symmetric(const BetaMatrix& beta);

// residual_i = NF(sum_j beta_ij f_xj) in the quotient by (f) + J(f)^2.
std::vector<Coset> check_congruence(const BetaMatrix& beta, const Polynomial& f, unsigned d_cap = kDefaultDCap);

// beta_ii outside K_i * K_i + (f) + J(f), where K_i is built from the kernel.
bool check_nonmembership(const BetaMatrix& beta, const Polynomial& f, std::size_t i,
                         const std::vector<Derivation>& kernel, unsigned d_cap = kDefaultDCap);

// Every listed vector solves Hess(f) v = 0 in the Tjurina algebra, and the list
// has exactly as many members as the kernel dimension and spans the kernel.
bool listed_kernel_matches(const QuotientPtr& tjurina, const Polynomial& f, const std::vector<Derivation>& kernel,
                           const std::vector<std::vector<Polynomial>>& listed);

// p outside (bound) + (f) + J(f).
bool outside_bound(const Polynomial& p, const Polynomial& f, const std::vector<Polynomial>& bound,
                   unsigned d_cap = kDefaultDCap);

struct Expectations {
  std::optional<std::size_t> mu;
  std::optional<std::size_t> tau;
  // Generators of an ideal that, with (f) + J(f), contains I_i^2.
  std::vector<Polynomial> declared_bound;
  std::vector<std::vector<Polynomial>> listed_kernel;
};

struct VerificationReport {
  std::string case_id;
  std::string branch;
  std::string route;
  std::map<std::string, std::string> bindings;
  std::map<std::string, long> structural;
  std::string f;
  std::optional<std::size_t> tau_observed;
  std::optional<std::size_t> tau_expected;
  std::optional<std::size_t> mu_observed;
  std::optional<std::size_t> mu_expected;
  std::optional<std::size_t> kernel_dimension;
  // Catalog-listed kernel vectors: how many, and whether they all lie in the
  // kernel and span it.
  std::optional<std::size_t> listed_kernel_count;
  std::optional<bool> listed_kernel_ok;
  std::vector<std::string> residuals;
  bool congruence_ok = false;
  std::optional<std::size_t> witness;  // 1-based
  bool nonmembership = false;
  std::string bound_used;
  std::optional<bool> declared_bound_nonmembership;
  std::vector<std::string> notes;
  double elapsed_ms = 0;
  std::string error;
  bool pass = false;
};

// witness is 1-based.
VerificationReport verify_case(const Polynomial& f, const BetaMatrix& beta, std::size_t witness,
                               const Expectations& expect, unsigned d_cap = kDefaultDCap);

Polynomial determinant(const std::vector<std::vector<Polynomial>>& m);
// Signed cofactor (-1)^{i+j} det of Hess(f) with row i and column j removed; 0-based.
Polynomial hessian_cofactor(const Polynomial& f, std::size_t i, std::size_t j);

// s is the 0-based index of the section variable.
VerificationReport verify_simple_elliptic(const Polynomial& f, const WeightVector& w, std::size_t s,
                                          const Expectations& expect, unsigned d_cap = kDefaultDCap);

// Flags and fields of a report serialized as JSON text.
std::string report_to_json(const VerificationReport& r, bool include_timing = true);
std::string reports_to_json(const std::vector<VerificationReport>& rs, bool include_timing = true);

}  // namespace nakai
