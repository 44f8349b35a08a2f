#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nakai/criterion.hpp"
#include "nakai/expr.hpp"

namespace nakai {

struct Condition {
  enum class Kind { Fixed, NonZero, IntEq, IntGe, Odd, Even };
  Kind kind;
  std::string name;  // Fixed / IntEq / IntGe / Odd / Even
  ExprPtr expr;      // Fixed value or NonZero polynomial
  long value = 0;    // IntEq / IntGe
};

enum class Route { Beta, SimpleElliptic, SkipFewnomial };
std::string route_name(Route r);

struct Branch {
  std::string condition_text;
  std::vector<Condition> conditions;
  Route route = Route::Beta;
  std::optional<ExprPtr> f;
  std::optional<std::vector<std::string>> params;
  std::vector<ExprPtr> constraints;
  std::vector<std::pair<std::string, ExprPtr>> lets;
  std::optional<ExprPtr> mu;
  std::optional<ExprPtr> tau;
  std::vector<ExprPtr> weights;
  std::optional<std::string> section;
  std::optional<long> witness;
  std::vector<ExprPtr> bound;
  std::map<std::pair<int, int>, ExprPtr> beta;  // i <= j, 1-based
  // Entries as originally printed, kept where the beta entry is a correction.
  std::map<std::pair<int, int>, ExprPtr> printed;
  std::vector<std::vector<ExprPtr>> kernel;
  std::size_t line = 0;
};

struct StructuralParam {
  std::string name;
  long min = 1;
  // "p": values min..p_max; "2q": values min..2*q_max.
  std::string range = "p";
};

struct CaseSpec {
  std::string id;
  std::string family;
  std::vector<std::string> vars;
  std::vector<std::string> params;
  std::optional<StructuralParam> structural;
  std::vector<ExprPtr> constraints;
  ExprPtr f;
  ExprPtr mu;
  std::vector<Branch> branches;
  std::string file;
  std::size_t line = 0;
};

std::vector<CaseSpec> parse_catalog(const std::string& text, const std::string& file = "<string>");
std::string serialize_case(const CaseSpec& c);
std::string serialize_catalog(const std::vector<CaseSpec>& cs);

struct ManifestEntry {
  std::string id;
  std::string family;
};

std::string default_catalog_dir();
std::vector<ManifestEntry> load_manifest(const std::string& dir);
// Loads every *.case file in dir and validates ids against the manifest.
std::vector<CaseSpec> load_catalog(const std::string& dir = default_catalog_dir());
const CaseSpec& find_case(const std::vector<CaseSpec>& catalog, const std::string& id);

struct Specialization {
  std::string case_id;
  std::size_t branch = 0;
  std::map<std::string, long> structural;
  Bindings bindings;  // moduli
  std::uint64_t seed = 0;
  std::size_t trial = 0;
};

struct ConcreteCase {
  const CaseSpec* spec = nullptr;
  const Branch* branch = nullptr;
  Specialization sp;
  RingPtr ring;
  Polynomial f;
  Route route = Route::Beta;
  std::optional<std::size_t> mu;
  std::optional<std::size_t> tau;
  BetaMatrix beta;
  std::size_t witness = 0;  // 1-based, 0 when absent
  std::vector<Polynomial> bound;
  std::vector<std::vector<Polynomial>> kernel;
  std::optional<WeightVector> weights;
  std::optional<std::size_t> section;
};

struct StructuralRange {
  long p_max = 6;
  long q_max = 6;
};

// Values of the structural parameter in range; {} for families without one.
std::vector<long> structural_values(const CaseSpec& c, const StructuralRange& range);
// Branch indices applicable at the given structural values.
std::vector<std::size_t> expand_family(const CaseSpec& c, const std::map<std::string, long>& structural);

Specialization specialize_case(const CaseSpec& c, std::size_t branch, const std::map<std::string, long>& structural,
                               std::uint64_t seed, std::size_t trial = 0);
// With use_printed, entries that carry a printed variant use it instead.
ConcreteCase instantiate(const CaseSpec& c, const Specialization& sp, bool use_printed = false);
// True when some branch of c keeps a printed variant of a beta entry.
bool has_printed_entries(const CaseSpec& c);
// Binds every modulus and structural value; evaluates nothing.
Bindings full_bindings(const CaseSpec& c, const Branch& b, const Specialization& sp);

VerificationReport run_case(const ConcreteCase& cc, unsigned d_cap = kDefaultDCap);

}  // namespace nakai
