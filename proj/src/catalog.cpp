#include "nakai/catalog.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#ifndef NAKAI_DEFAULT_CATALOG_DIR
#define NAKAI_DEFAULT_CATALOG_DIR "catalog"
#endif

namespace nakai {

std::string route_name(Route r) {
  switch (r) {
    case Route::Beta:
      return "beta";
    case Route::SimpleElliptic:
      return "simple-elliptic";
    case Route::SkipFewnomial:
      return "skip-fewnomial";
  }
  return "?";
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Cursor {
  const std::string& file;
  std::size_t line;
};

[[noreturn]] void fail(const Cursor& c, std::size_t col, const std::string& msg) {
  throw ParseError(c.file + ": " + msg, c.line, col);
}

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'; });
}

// Pieces of text separated by sep, each with its 1-based starting column.
std::vector<std::pair<std::string, std::size_t>> split(const std::string& text, std::size_t col0, char sep) {
  std::vector<std::pair<std::string, std::size_t>> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == sep) {
      std::string piece = text.substr(start, i - start);
      std::size_t lead = piece.find_first_not_of(" \t");
      if (lead == std::string::npos) lead = piece.size();
      out.emplace_back(trim(piece), col0 + start + lead);
      start = i + 1;
    }
  }
  return out;
}

std::vector<std::pair<std::string, std::size_t>> words(const std::string& text, std::size_t col0) {
  std::vector<std::pair<std::string, std::size_t>> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    std::size_t b = i;
    while (i < text.size() && text[i] != ' ' && text[i] != '\t') ++i;
    if (i > b) out.emplace_back(text.substr(b, i - b), col0 + b);
  }
  return out;
}

ExprPtr expr_at(const Cursor& c, const std::string& text, std::size_t col) {
  if (text.empty()) fail(c, col, "expected an expression");
  return parse_expression(text, c.line, col);
}

long parse_long(const Cursor& c, const std::string& text, std::size_t col) {
  try {
    std::size_t used = 0;
    long v = std::stol(text, &used);
    if (used != text.size()) fail(c, col, "expected an integer, got '" + text + "'");
    return v;
  } catch (const std::logic_error&) {
    fail(c, col, "expected an integer, got '" + text + "'");
  }
}

std::vector<Condition> parse_conditions(const Cursor& c, const std::string& text, std::size_t col,
                                        const std::string& structural) {
  std::vector<Condition> out;
  if (text == "all") return out;
  for (const auto& [atom, acol] : split(text, col, '&')) {
    if (atom.empty()) fail(c, acol, "empty branch condition");
    Condition cond;
    auto ws = words(atom, acol);
    if (ws.size() == 2 && (ws[1].first == "odd" || ws[1].first == "even")) {
      if (ws[0].first != structural) fail(c, acol, "parity conditions apply to the structural parameter only");
      cond.kind = ws[1].first == "odd" ? Condition::Kind::Odd : Condition::Kind::Even;
      cond.name = ws[0].first;
      out.push_back(cond);
      continue;
    }
    std::size_t pos;
    if ((pos = atom.find("!=")) != std::string::npos) {
      std::string rhs = trim(atom.substr(pos + 2));
      if (rhs != "0") fail(c, acol + pos, "only '<expr> != 0' is supported");
      cond.kind = Condition::Kind::NonZero;
      cond.expr = expr_at(c, trim(atom.substr(0, pos)), acol);
    } else if ((pos = atom.find(">=")) != std::string::npos) {
      cond.name = trim(atom.substr(0, pos));
      if (cond.name != structural) fail(c, acol, "'>=' applies to the structural parameter only");
      cond.kind = Condition::Kind::IntGe;
      cond.value = parse_long(c, trim(atom.substr(pos + 2)), acol + pos + 2);
    } else if ((pos = atom.find('=')) != std::string::npos) {
      cond.name = trim(atom.substr(0, pos));
      if (!is_identifier(cond.name)) fail(c, acol, "left side of '=' must be a parameter name");
      std::string rhs = trim(atom.substr(pos + 1));
      if (cond.name == structural) {
        cond.kind = Condition::Kind::IntEq;
        cond.value = parse_long(c, rhs, acol + pos + 1);
      } else {
        cond.kind = Condition::Kind::Fixed;
        cond.expr = expr_at(c, rhs, acol + pos + 1);
      }
    } else {
      fail(c, acol, "unrecognized branch condition '" + atom + "'");
    }
    out.push_back(cond);
  }
  return out;
}

std::string condition_to_string(const Condition& c) {
  switch (c.kind) {
    case Condition::Kind::Fixed:
      return c.name + " = " + expr_to_string(c.expr);
    case Condition::Kind::NonZero:
      return expr_to_string(c.expr) + " != 0";
    case Condition::Kind::IntEq:
      return c.name + " = " + std::to_string(c.value);
    case Condition::Kind::IntGe:
      return c.name + " >= " + std::to_string(c.value);
    case Condition::Kind::Odd:
      return c.name + " odd";
    case Condition::Kind::Even:
      return c.name + " even";
  }
  return "";
}

std::string conditions_to_string(const std::vector<Condition>& cs) {
  if (cs.empty()) return "all";
  std::string s;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (i) s += " & ";
    s += condition_to_string(cs[i]);
  }
  return s;
}

Route parse_route(const Cursor& c, const std::string& s, std::size_t col) {
  if (s == "beta") return Route::Beta;
  if (s == "simple-elliptic") return Route::SimpleElliptic;
  if (s == "skip-fewnomial") return Route::SkipFewnomial;
  fail(c, col, "unknown route '" + s + "'");
}

std::vector<ExprPtr> expr_list(const Cursor& c, const std::string& text, std::size_t col, char sep) {
  std::vector<ExprPtr> out;
  for (const auto& [piece, pcol] : split(text, col, sep)) out.push_back(expr_at(c, piece, pcol));
  return out;
}

std::string join(const std::vector<ExprPtr>& es, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (i) s += sep;
    s += expr_to_string(es[i]);
  }
  return s;
}

std::string join_words(const std::vector<std::string>& ws) {
  std::string s;
  for (std::size_t i = 0; i < ws.size(); ++i) {
    if (i) s += ' ';
    s += ws[i];
  }
  return s;
}

void validate_case(const CaseSpec& c) {
  auto where = [&](std::size_t line) { return c.file + ":" + std::to_string(line) + ": case " + c.id + ": "; };
  if (c.vars.empty()) throw CatalogError(where(c.line) + "missing 'vars'");
  if (!c.f) throw CatalogError(where(c.line) + "missing 'f'");
  if (!c.mu) throw CatalogError(where(c.line) + "missing 'mu'");
  if (c.family.empty()) throw CatalogError(where(c.line) + "missing 'family'");
  if (c.branches.empty()) throw CatalogError(where(c.line) + "no branches");
  for (const auto& b : c.branches) {
    if (!b.tau) throw CatalogError(where(b.line) + "branch without 'tau'");
    if (b.route == Route::Beta) {
      if (!b.witness) throw CatalogError(where(b.line) + "beta branch without 'witness'");
      if (b.beta.empty()) throw CatalogError(where(b.line) + "beta branch without entries");
    }
    if (b.route != Route::Beta && b.weights.size() != c.vars.size())
      throw CatalogError(where(b.line) + "weighted branch needs one weight per variable");
    if (b.route == Route::SimpleElliptic && !b.section)
      throw CatalogError(where(b.line) + "simple-elliptic branch without 'section'");
    for (const auto& [ij, e] : b.beta)
      if (ij.first < 1 || ij.second > static_cast<int>(c.vars.size()) || ij.first > ij.second)
        throw CatalogError(where(b.line) + "beta index out of range");
    for (const auto& k : b.kernel)
      if (k.size() != c.vars.size()) throw CatalogError(where(b.line) + "kernel vector has the wrong length");
    for (const auto& [ij, e] : b.printed)
      if (!b.beta.count(ij)) throw CatalogError(where(b.line) + "printed entry without a matching beta entry");
  }
}

}  // namespace

std::vector<CaseSpec> parse_catalog(const std::string& text, const std::string& file) {
  std::vector<CaseSpec> out;
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  CaseSpec* cur = nullptr;
  Branch* br = nullptr;
  while (std::getline(in, raw)) {
    ++lineno;
    Cursor c{file, lineno};
    std::string line = raw;
    if (auto h = line.find('#'); h != std::string::npos) line = line.substr(0, h);
    if (trim(line).empty()) continue;
    std::size_t kb = line.find_first_not_of(" \t");
    std::size_t ke = line.find_first_of(" \t", kb);
    std::string key = line.substr(kb, ke == std::string::npos ? std::string::npos : ke - kb);
    std::string rest;
    std::size_t col = line.size() + 1;
    if (ke != std::string::npos) {
      std::size_t vb = line.find_first_not_of(" \t", ke);
      if (vb != std::string::npos) {
        rest = trim(line.substr(vb));
        col = vb + 1;
      }
    }
    if (key == "case") {
      if (rest.empty() || rest.find(' ') != std::string::npos) fail(c, col, "case id must be a single word");
      out.emplace_back();
      cur = &out.back();
      cur->id = rest;
      cur->file = file;
      cur->line = lineno;
      br = nullptr;
      continue;
    }
    if (!cur) fail(c, kb + 1, "record '" + key + "' before any 'case'");
    if (key == "branch") {
      cur->branches.emplace_back();
      br = &cur->branches.back();
      br->line = lineno;
      br->conditions = parse_conditions(c, rest, col, cur->structural ? cur->structural->name : "");
      br->condition_text = conditions_to_string(br->conditions);
      continue;
    }
    if (!br) {
      if (key == "family") {
        cur->family = rest;
      } else if (key == "vars") {
        for (const auto& [w, wc] : words(rest, col)) {
          if (!is_identifier(w)) fail(c, wc, "bad variable name '" + w + "'");
          cur->vars.push_back(w);
        }
      } else if (key == "params") {
        for (const auto& [w, wc] : words(rest, col)) {
          if (!is_identifier(w)) fail(c, wc, "bad parameter name '" + w + "'");
          cur->params.push_back(w);
        }
      } else if (key == "structural") {
        auto ws = words(rest, col);
        if (ws.size() != 3 || (ws[2].first != "p" && ws[2].first != "2q"))
          fail(c, col, "expected 'structural <name> <min> p|2q'");
        cur->structural = StructuralParam{ws[0].first, parse_long(c, ws[1].first, ws[1].second), ws[2].first};
      } else if (key == "constraints") {
        for (auto& e : expr_list(c, rest, col, ',')) cur->constraints.push_back(e);
      } else if (key == "f") {
        cur->f = expr_at(c, rest, col);
      } else if (key == "mu") {
        cur->mu = expr_at(c, rest, col);
      } else {
        fail(c, kb + 1, "unknown case record '" + key + "'");
      }
      continue;
    }
    if (key == "route") {
      br->route = parse_route(c, rest, col);
    } else if (key == "f") {
      br->f = expr_at(c, rest, col);
    } else if (key == "params") {
      std::vector<std::string> ps;
      for (const auto& [w, wc] : words(rest, col)) {
        if (!is_identifier(w)) fail(c, wc, "bad parameter name '" + w + "'");
        ps.push_back(w);
      }
      br->params = ps;
    } else if (key == "constraints") {
      for (auto& e : expr_list(c, rest, col, ',')) br->constraints.push_back(e);
    } else if (key == "let") {
      auto ws = words(rest, col);
      if (ws.size() < 2 || !is_identifier(ws[0].first)) fail(c, col, "expected 'let <name> <expr>'");
      std::size_t off = ws[1].second - col;
      br->lets.emplace_back(ws[0].first, expr_at(c, rest.substr(off), ws[1].second));
    } else if (key == "mu") {
      br->mu = expr_at(c, rest, col);
    } else if (key == "tau") {
      br->tau = expr_at(c, rest, col);
    } else if (key == "weights") {
      for (const auto& [w, wc] : words(rest, col)) br->weights.push_back(expr_at(c, w, wc));
    } else if (key == "section") {
      if (std::find(cur->vars.begin(), cur->vars.end(), rest) == cur->vars.end())
        fail(c, col, "section must name a variable");
      br->section = rest;
    } else if (key == "witness") {
      br->witness = parse_long(c, rest, col);
    } else if (key == "bound") {
      for (auto& e : expr_list(c, rest, col, ',')) br->bound.push_back(e);
    } else if (key == "beta" || key == "printed") {
      auto& target = key == "beta" ? br->beta : br->printed;
      auto ws = words(rest, col);
      if (ws.size() < 3) fail(c, col, "expected '" + key + " <i> <j> <expr>'");
      int i = static_cast<int>(parse_long(c, ws[0].first, ws[0].second));
      int j = static_cast<int>(parse_long(c, ws[1].first, ws[1].second));
      if (i > j) fail(c, ws[0].second, "store only entries with i <= j; the matrix is symmetric");
      if (target.count({i, j})) fail(c, ws[0].second, "duplicate " + key + " entry");
      std::size_t off = ws[2].second - col;
      target[{i, j}] = expr_at(c, rest.substr(off), ws[2].second);
    } else if (key == "kernel") {
      br->kernel.push_back(expr_list(c, rest, col, ';'));
    } else {
      fail(c, kb + 1, "unknown branch record '" + key + "'");
    }
  }
  for (const auto& cs : out) validate_case(cs);
  return out;
}

std::string serialize_case(const CaseSpec& c) {
  std::ostringstream o;
  o << "case " << c.id << "\n";
  o << "family " << c.family << "\n";
  o << "vars " << join_words(c.vars) << "\n";
  if (!c.params.empty()) o << "params " << join_words(c.params) << "\n";
  if (c.structural) o << "structural " << c.structural->name << " " << c.structural->min << " " << c.structural->range << "\n";
  if (!c.constraints.empty()) o << "constraints " << join(c.constraints, ", ") << "\n";
  o << "f " << expr_to_string(c.f) << "\n";
  o << "mu " << expr_to_string(c.mu) << "\n";
  for (const auto& b : c.branches) {
    o << "\nbranch " << conditions_to_string(b.conditions) << "\n";
    o << "route " << route_name(b.route) << "\n";
    if (b.params) o << "params " << join_words(*b.params) << "\n";
    if (b.f) o << "f " << expr_to_string(*b.f) << "\n";
    if (!b.constraints.empty()) o << "constraints " << join(b.constraints, ", ") << "\n";
    for (const auto& [n, e] : b.lets) o << "let " << n << " " << expr_to_string(e) << "\n";
    if (b.mu) o << "mu " << expr_to_string(*b.mu) << "\n";
    if (b.tau) o << "tau " << expr_to_string(*b.tau) << "\n";
    if (!b.weights.empty()) o << "weights " << join(b.weights, " ") << "\n";
    if (b.section) o << "section " << *b.section << "\n";
    if (b.witness) o << "witness " << *b.witness << "\n";
    if (!b.bound.empty()) o << "bound " << join(b.bound, ", ") << "\n";
    for (const auto& [ij, e] : b.beta) o << "beta " << ij.first << " " << ij.second << " " << expr_to_string(e) << "\n";
    for (const auto& [ij, e] : b.printed)
      o << "printed " << ij.first << " " << ij.second << " " << expr_to_string(e) << "\n";
    for (const auto& k : b.kernel) o << "kernel " << join(k, " ; ") << "\n";
  }
  return o.str();
}

std::string serialize_catalog(const std::vector<CaseSpec>& cs) {
  std::string s;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (i) s += "\n";
    s += serialize_case(cs[i]);
  }
  return s;
}

std::string default_catalog_dir() {
  if (const char* env = std::getenv("NAKAI_CATALOG_DIR"); env && *env) return env;
  return NAKAI_DEFAULT_CATALOG_DIR;
}

std::vector<ManifestEntry> load_manifest(const std::string& dir) {
  std::ifstream in(std::filesystem::path(dir) / "MANIFEST");
  if (!in) throw CatalogError("cannot open manifest in " + dir);
  std::vector<ManifestEntry> out;
  std::string line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line = line.substr(0, h);
    std::istringstream ls(line);
    ManifestEntry e;
    if (!(ls >> e.id)) continue;
    if (!(ls >> e.family)) throw CatalogError("manifest line without family: " + line);
    out.push_back(e);
  }
  return out;
}

std::vector<CaseSpec> load_catalog(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw CatalogError("catalog directory not found: " + dir);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".case") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<CaseSpec> all;
  for (const auto& p : files) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    for (auto& c : parse_catalog(ss.str(), p.filename().string())) all.push_back(std::move(c));
  }
  auto manifest = load_manifest(dir);
  std::map<std::string, std::string> expected;
  for (const auto& m : manifest) expected[m.id] = m.family;
  std::set<std::string> seen;
  for (const auto& c : all) {
    if (!seen.insert(c.id).second) throw CatalogError("duplicate case id " + c.id);
    auto it = expected.find(c.id);
    if (it == expected.end()) throw CatalogError("case " + c.id + " is not in the manifest");
    if (it->second != c.family) throw CatalogError("case " + c.id + " has family " + c.family + ", manifest says " + it->second);
  }
  for (const auto& m : manifest)
    if (!seen.count(m.id)) throw CatalogError("manifest case " + m.id + " missing from the catalog");
  std::vector<CaseSpec> ordered;
  for (const auto& m : manifest)
    for (auto& c : all)
      if (c.id == m.id) ordered.push_back(std::move(c));
  return ordered;
}

const CaseSpec& find_case(const std::vector<CaseSpec>& catalog, const std::string& id) {
  for (const auto& c : catalog)
    if (c.id == id) return c;
  throw CatalogError("unknown case id " + id);
}

std::vector<long> structural_values(const CaseSpec& c, const StructuralRange& range) {
  if (!c.structural) return {};
  long hi = c.structural->range == "2q" ? 2 * range.q_max : range.p_max;
  std::vector<long> out;
  for (long v = c.structural->min; v <= hi; ++v) out.push_back(v);
  return out;
}

namespace {

bool structural_match(const Branch& b, const std::map<std::string, long>& structural) {
  for (const auto& cond : b.conditions) {
    auto it = structural.find(cond.name);
    switch (cond.kind) {
      case Condition::Kind::IntEq:
        if (it == structural.end() || it->second != cond.value) return false;
        break;
      case Condition::Kind::IntGe:
        if (it == structural.end() || it->second < cond.value) return false;
        break;
      case Condition::Kind::Odd:
        if (it == structural.end() || it->second % 2 == 0) return false;
        break;
      case Condition::Kind::Even:
        if (it == structural.end() || it->second % 2 != 0) return false;
        break;
      default:
        break;
    }
  }
  return true;
}

Bindings structural_bindings(const Branch& b, const std::map<std::string, long>& structural) {
  Bindings out;
  for (const auto& [k, v] : structural) out[k] = Rational(v);
  for (const auto& [name, e] : b.lets) out[name] = evaluate_constant(e, out);
  return out;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

std::vector<ExprPtr> exclusions(const CaseSpec& c, const Branch& b) {
  std::vector<ExprPtr> out = c.constraints;
  out.insert(out.end(), b.constraints.begin(), b.constraints.end());
  for (const auto& cond : b.conditions)
    if (cond.kind == Condition::Kind::NonZero) out.push_back(cond.expr);
  std::vector<ExprPtr> divs;
  collect_divisors(b.f ? *b.f : c.f, divs);
  for (const auto& [ij, e] : b.beta) collect_divisors(e, divs);
  for (const auto& [ij, e] : b.printed) collect_divisors(e, divs);
  for (const auto& k : b.kernel)
    for (const auto& e : k) collect_divisors(e, divs);
  for (const auto& e : b.bound) collect_divisors(e, divs);
  out.insert(out.end(), divs.begin(), divs.end());
  return out;
}

}  // namespace

std::vector<std::size_t> expand_family(const CaseSpec& c, const std::map<std::string, long>& structural) {
  if (c.structural) {
    auto it = structural.find(c.structural->name);
    if (it == structural.end()) throw SpecializationError("case " + c.id + " needs a value for " + c.structural->name);
    if (it->second < c.structural->min)
      throw SpecializationError(c.structural->name + " = " + std::to_string(it->second) + " is out of range for " + c.id);
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < c.branches.size(); ++i)
    if (structural_match(c.branches[i], structural)) out.push_back(i);
  return out;
}

Specialization specialize_case(const CaseSpec& c, std::size_t branch, const std::map<std::string, long>& structural,
                               std::uint64_t seed, std::size_t trial) {
  if (branch >= c.branches.size()) throw SpecializationError("branch index out of range");
  const Branch& b = c.branches[branch];
  if (!structural_match(b, structural)) throw SpecializationError("branch does not apply at these structural values");
  Specialization sp;
  sp.case_id = c.id;
  sp.branch = branch;
  sp.structural = structural;
  sp.seed = seed;
  sp.trial = trial;
  Bindings base = structural_bindings(b, structural);
  Bindings fixed;
  for (const auto& cond : b.conditions)
    if (cond.kind == Condition::Kind::Fixed) fixed[cond.name] = evaluate_constant(cond.expr, base);
  std::uint64_t h = fnv1a(c.id);
  std::vector<std::uint32_t> key{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                                 static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32),
                                 static_cast<std::uint32_t>(branch), static_cast<std::uint32_t>(trial)};
  for (const auto& [k, v] : structural) key.push_back(static_cast<std::uint32_t>(v));
  std::seed_seq seq(key.begin(), key.end());
  std::mt19937_64 rng(seq);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
  const auto& params = b.params ? *b.params : c.params;
  auto excl = exclusions(c, b);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Bindings all = base;
    Bindings moduli;
    for (const auto& p : params) {
      auto it = fixed.find(p);
      Rational v = it != fixed.end() ? it->second : make_rational(num(rng), den(rng));
      all[p] = v;
      moduli[p] = v;
    }
    bool ok = true;
    for (const auto& e : excl)
      if (evaluate_constant(e, all) == 0) {
        ok = false;
        break;
      }
    if (ok) {
      sp.bindings = moduli;
      return sp;
    }
  }
  throw SpecializationError("no admissible specialization for " + c.id + " after 1000 draws");
}

Bindings full_bindings(const CaseSpec&, const Branch& b, const Specialization& sp) {
  Bindings out = structural_bindings(b, sp.structural);
  for (const auto& [k, v] : sp.bindings) out[k] = v;
  return out;
}

bool has_printed_entries(const CaseSpec& c) {
  for (const auto& b : c.branches)
    if (!b.printed.empty()) return true;
  return false;
}

ConcreteCase instantiate(const CaseSpec& c, const Specialization& sp, bool use_printed) {
  const Branch& b = c.branches.at(sp.branch);
  ConcreteCase cc;
  cc.spec = &c;
  cc.branch = &b;
  cc.sp = sp;
  cc.ring = make_ring(c.vars);
  cc.route = b.route;
  Bindings all = full_bindings(c, b, sp);
  cc.f = evaluate(b.f ? *b.f : c.f, cc.ring, all);
  auto count = [&](const ExprPtr& e) {
    long v = evaluate_integer(e, all);
    if (v < 0) throw CatalogError("negative invariant for " + c.id);
    return static_cast<std::size_t>(v);
  };
  cc.mu = count(b.mu ? *b.mu : c.mu);
  cc.tau = count(*b.tau);
  std::size_t n = c.vars.size();
  if (b.route == Route::Beta) {
    cc.beta.assign(n, std::vector<Polynomial>(n, Polynomial(cc.ring)));
    for (const auto& [ij, entry] : b.beta) {
      auto pr = b.printed.find(ij);
      const ExprPtr& e = use_printed && pr != b.printed.end() ? pr->second : entry;
      Polynomial p = evaluate(e, cc.ring, all);
      cc.beta[ij.first - 1][ij.second - 1] = p;
      cc.beta[ij.second - 1][ij.first - 1] = p;
    }
    cc.witness = static_cast<std::size_t>(*b.witness);
  }
  for (const auto& e : b.bound) cc.bound.push_back(evaluate(e, cc.ring, all));
  for (const auto& k : b.kernel) {
    std::vector<Polynomial> v;
    for (const auto& e : k) v.push_back(evaluate(e, cc.ring, all));
    cc.kernel.push_back(std::move(v));
  }
  if (!b.weights.empty()) {
    WeightVector w;
    for (const auto& e : b.weights) w.weights.push_back(evaluate_constant(e, all));
    cc.weights = w;
  }
  if (b.section) cc.section = static_cast<std::size_t>(cc.ring->index_of(*b.section));
  return cc;
}

VerificationReport run_case(const ConcreteCase& cc, unsigned d_cap) {
  Expectations ex;
  ex.mu = cc.mu;
  ex.tau = cc.tau;
  ex.declared_bound = cc.bound;
  ex.listed_kernel = cc.kernel;
  VerificationReport r;
  auto start = std::chrono::steady_clock::now();
  switch (cc.route) {
    case Route::Beta:
      r = verify_case(cc.f, cc.beta, cc.witness, ex, d_cap);
      break;
    case Route::SimpleElliptic:
      r = verify_simple_elliptic(cc.f, *cc.weights, *cc.section, ex, d_cap);
      break;
    case Route::SkipFewnomial: {
      r.route = "skip-fewnomial";
      r.f = cc.f.to_string();
      r.mu_expected = cc.mu;
      r.tau_expected = cc.tau;
      try {
        r.mu_observed = milnor_number(cc.f, d_cap);
        r.tau_observed = tjurina_number(cc.f, d_cap);
        bool weighted = cc.weights && weighted_degree_check(cc.f, *cc.weights);
        if (!weighted) r.notes.push_back("not weighted homogeneous for the stored weights");
        r.pass = weighted && r.mu_observed == cc.mu && r.tau_observed == cc.tau;
        if (r.mu_observed != cc.mu || r.tau_observed != cc.tau) r.notes.push_back("invariant mismatch");
      } catch (const std::exception& e) {
        r.error = e.what();
      }
      r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      break;
    }
  }
  r.case_id = cc.spec->id;
  r.branch = cc.branch->condition_text;
  r.structural = cc.sp.structural;
  for (const auto& [k, v] : cc.sp.bindings) r.bindings[k] = to_string(v);
  return r;
}

}  // namespace nakai
