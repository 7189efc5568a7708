#pragma once

// The classification-table data module: loads the family file, instantiates
// parameters (minimal values plus one increment each, capped by dim W),
// expands dual-variant braces, runs the verification harness and the curated
// negative controls, and renders deterministic TSV summaries.
//
// Sphericity of P(W) is asserted on the *saturated* configuration: the
// semisimple part together with the full torus of per-summand scalars. The
// printed center descriptors are calibrated for the normalizer bookkeeping of
// the affine classification, not for the projective rank test; two entries
// (two isomorphic copies of a standard module with center [h(1,1)] resp. [0])
// are provably not P(W)-spherical with only scalars attached, while every
// family is spherical once the summand torus is present. Reports carry both
// verdicts plus the normalizer data of the printed configuration.

#include <chrono>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "spherocheck/mult_free.hpp"
#include "spherocheck/spec_dsl.hpp"
#include "spherocheck/sphericity.hpp"

namespace spherocheck::tab {

struct TableEntry {
  std::string id;
  std::string constraints;
  std::string template_text;
  std::vector<std::string> flags;
  int line = 0;
};

struct table_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

struct Constraint {
  char var = 'n';
  char other = 0;  // 0: bound by a constant
  int offset = 0;  // var >= other + offset  (or var >= offset)
};

inline std::vector<Constraint> parse_constraints(const std::string& text, int line) {
  std::vector<Constraint> out;
  for (std::string partRaw : split(text, ',')) {
    std::string p = trim(partRaw);
    if (p.empty()) continue;
    Constraint c;
    std::size_t i = 0;
    if (p[i] != 'n' && p[i] != 'm')
      throw table_error("table line " + std::to_string(line) + ": bad constraint '" + p + "'");
    c.var = p[i++];
    bool strict = false;
    if (p.compare(i, 2, ">=") == 0) {
      i += 2;
    } else if (p[i] == '>') {
      strict = true;
      ++i;
    } else {
      throw table_error("table line " + std::to_string(line) + ": bad constraint '" + p + "'");
    }
    if (i < p.size() && (p[i] == 'n' || p[i] == 'm')) {
      c.other = p[i++];
      if (i < p.size() && p[i] == '+') {
        c.offset = std::stoi(p.substr(i + 1));
        i = p.size();
      }
    } else {
      c.offset = std::stoi(p.substr(i));
      i = p.size();
    }
    if (strict) c.offset += 1;
    out.push_back(c);
  }
  return out;
}

inline bool feasible(const std::vector<Constraint>& cs, const std::map<char, int>& a) {
  for (const auto& c : cs) {
    int lhs = a.at(c.var);
    int rhs = c.offset + (c.other ? a.at(c.other) : 0);
    if (lhs < rhs) return false;
  }
  return true;
}

// integer expressions over n, m: terms like 2n, n, 17, joined by + and -
inline int eval_expr(const std::string& expr, const std::map<char, int>& a, int line) {
  int total = 0, sign = 1;
  std::size_t i = 0;
  bool any = false;
  while (i < expr.size()) {
    char c = expr[i];
    if (c == ' ') { ++i; continue; }
    if (c == '+') { sign = 1; ++i; continue; }
    if (c == '-') { sign = -1; ++i; continue; }
    int coeff = 0;
    bool digits = false;
    while (i < expr.size() && std::isdigit(static_cast<unsigned char>(expr[i]))) {
      coeff = coeff * 10 + (expr[i] - '0');
      digits = true;
      ++i;
    }
    if (i < expr.size() && (expr[i] == 'n' || expr[i] == 'm')) {
      if (!digits) coeff = 1;
      coeff *= a.at(expr[i]);
      ++i;
    } else if (!digits) {
      throw table_error("table line " + std::to_string(line) + ": bad expression '" + expr + "'");
    }
    total += sign * coeff;
    sign = 1;
    any = true;
  }
  if (!any)
    throw table_error("table line " + std::to_string(line) + ": empty expression");
  return total;
}

// replaces parenthesized parameter expressions; "w(2n-1)" becomes "w5" etc.
inline std::string substitute(const std::string& text, const std::map<char, int>& a,
                              int line) {
  std::string out;
  for (std::size_t i = 0; i < text.size();) {
    if (text[i] != '(') {
      out += text[i++];
      continue;
    }
    std::size_t close = text.find(')', i);
    if (close == std::string::npos)
      throw table_error("table line " + std::to_string(line) + ": unbalanced parenthesis");
    std::string content = text.substr(i + 1, close - i - 1);
    bool has_var = content.find('n') != std::string::npos ||
                   content.find('m') != std::string::npos;
    if (!has_var) {
      out += text.substr(i, close - i + 1);
    } else {
      std::vector<std::string> parts = split(content, ',');
      std::string joined;
      for (std::size_t k = 0; k < parts.size(); ++k) {
        if (k) joined += ",";
        std::string p = trim(parts[k]);
        bool pv = p.find('n') != std::string::npos || p.find('m') != std::string::npos;
        joined += pv ? std::to_string(eval_expr(p, a, line)) : p;
      }
      bool weight_style = !out.empty() && out.back() == 'w' && parts.size() == 1;
      out += weight_style ? joined : "(" + joined + ")";
    }
    i = close + 1;
  }
  return out;
}

struct Brace {
  std::size_t begin = 0, end = 0;  // [begin, end) covers {...}#tag
  std::string tag;
  std::vector<std::string> alts;
  std::vector<bool> literal;
};

inline std::vector<Brace> find_braces(const std::string& text, int line) {
  std::vector<Brace> out;
  int autotag = 0;
  for (std::size_t i = 0; i < text.size();) {
    if (text[i] != '{') {
      ++i;
      continue;
    }
    std::size_t close = text.find('}', i);
    if (close == std::string::npos)
      throw table_error("table line " + std::to_string(line) + ": unbalanced brace");
    Brace b;
    b.begin = i;
    std::string content = text.substr(i + 1, close - i - 1);
    std::size_t j = close + 1;
    if (j < text.size() && text[j] == '#') {
      ++j;
      while (j < text.size() && std::isalnum(static_cast<unsigned char>(text[j])))
        b.tag += text[j++];
    } else {
      b.tag = "!" + std::to_string(autotag++);
    }
    b.end = j;
    for (std::string altRaw : split(content, '|')) {
      std::string alt = trim(altRaw);
      bool lit = false;
      std::size_t q = alt.find("?lit");
      if (q != std::string::npos) {
        lit = true;
        alt = trim(alt.substr(0, q));
      }
      b.alts.push_back(alt);
      b.literal.push_back(lit);
    }
    out.push_back(std::move(b));
    i = b.end;
  }
  return out;
}

}  // namespace detail

inline std::vector<TableEntry> load_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw table_error("cannot open table file: " + path);
  std::vector<TableEntry> out;
  std::string lineText;
  int lineno = 0;
  while (std::getline(in, lineText)) {
    ++lineno;
    std::string s = detail::trim(lineText);
    if (s.empty() || s[0] == '#') continue;
    std::vector<std::string> cols = detail::split(s, ';');
    if (cols.size() < 3)
      throw table_error("table line " + std::to_string(lineno) + ": need at least 3 columns");
    TableEntry e;
    e.id = detail::trim(cols[0]);
    e.constraints = detail::trim(cols[1]);
    e.template_text = detail::trim(cols[2]);
    if (cols.size() >= 4)
      for (std::string f : detail::split(cols[3], ','))
        if (!detail::trim(f).empty()) e.flags.push_back(detail::trim(f));
    e.line = lineno;
    out.push_back(std::move(e));
  }
  return out;
}

struct Instance {
  std::string entry_id;
  std::string variant;  // brace choices, e.g. "a1.b0", empty when no braces
  std::string params;   // "n=2,m=3" or empty
  std::string text;     // canonical pair-spec text
  bool literal_reading = false;
  std::vector<std::string> flags;
  rep::PairSpec spec;
  long dim = 0;
};

struct SkippedVariant {
  std::string entry_id, variant, params, reason;
};

struct Enumeration {
  std::vector<Instance> instances;
  std::vector<SkippedVariant> skipped;
};

inline Enumeration enumerate_instances(const std::vector<TableEntry>& entries,
                                       long max_dim_w) {
  if (max_dim_w < 1) throw std::invalid_argument("enumerate_instances: max_dim_w >= 1");
  Enumeration out;
  constexpr int kLimit = 24;
  for (const auto& e : entries) {
    auto cs = detail::parse_constraints(e.constraints, e.line);
    std::vector<char> vars;
    for (char v : {'n', 'm'})
      for (const auto& c : cs)
        if (c.var == v || c.other == v) {
          if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
          break;
        }

    auto braces = detail::find_braces(e.template_text, e.line);
    // choice groups by tag, with consistent alternative counts
    std::vector<std::string> tags;
    std::map<std::string, std::size_t> altcount;
    for (const auto& b : braces) {
      if (!altcount.count(b.tag)) {
        tags.push_back(b.tag);
        altcount[b.tag] = b.alts.size();
      } else if (altcount[b.tag] != b.alts.size()) {
        throw table_error("table line " + std::to_string(e.line) +
                          ": braces with tag '" + b.tag + "' disagree on alternatives");
      }
    }

    // expands one assignment; in dry mode only classifies it:
    //   2: yields an instance within the cap, 1: parses but all beyond the
    //   cap, 0: no variant parses at all
    auto expand = [&](const std::map<char, int>& assign, bool collect) -> int {
      std::string params;
      for (char v : vars) {
        if (!params.empty()) params += ",";
        params += std::string(1, v) + "=" + std::to_string(assign.at(v));
      }
      int status = 0;
      std::vector<std::size_t> choice(tags.size(), 0);
      std::map<std::string, std::string> seen_texts;
      while (true) {
        std::map<std::string, std::size_t> pick;
        for (std::size_t t = 0; t < tags.size(); ++t) pick[tags[t]] = choice[t];
        std::string text;
        std::size_t at = 0;
        bool literal = false;
        for (const auto& b : braces) {
          text += e.template_text.substr(at, b.begin - at);
          std::size_t c = pick[b.tag];
          text += b.alts[c];
          if (b.literal[c]) literal = true;
          at = b.end;
        }
        text += e.template_text.substr(at);
        std::string variant;
        for (std::size_t t = 0; t < tags.size(); ++t) {
          if (tags[t][0] == '!' && altcount[tags[t]] == 1) continue;
          if (!variant.empty()) variant += ".";
          variant += (tags[t][0] == '!' ? "v" : tags[t]) + std::to_string(choice[t]);
        }

        try {
          std::string concrete = detail::substitute(text, assign, e.line);
          rep::PairSpec spec = dsl::parse_pair_spec(concrete);
          std::string canon = dsl::print_pair_spec(spec);
          la::Int dim = rep::dim_w(spec);
          if (dim <= max_dim_w) {
            status = 2;
            if (collect && !seen_texts.count(canon)) {
              seen_texts[canon] = variant;
              Instance inst;
              inst.entry_id = e.id;
              inst.variant = variant;
              inst.params = params;
              inst.text = canon;
              inst.literal_reading = literal;
              inst.flags = e.flags;
              inst.spec = std::move(spec);
              inst.dim = dim.get_si();
              out.instances.push_back(std::move(inst));
            }
          } else {
            status = std::max(status, 1);
          }
        } catch (const dsl::parse_error& err) {
          if (collect) out.skipped.push_back({e.id, variant, params, err.what()});
        } catch (const std::invalid_argument& err) {
          if (collect) out.skipped.push_back({e.id, variant, params, err.what()});
        }

        std::size_t t = 0;
        for (; t < tags.size(); ++t) {
          if (++choice[t] < altcount[tags[t]]) break;
          choice[t] = 0;
        }
        if (t == tags.size() || tags.empty()) break;
      }
      return status;
    };

    // first usable assignment in lexicographic order, with one increment per
    // parameter (advancing past sizes no variant accepts, e.g. so(4))
    auto search = [&](const std::map<char, int>& lower) -> std::optional<std::map<char, int>> {
      if (vars.empty()) {
        std::map<char, int> a;
        return expand(a, false) == 2 ? std::optional(a) : std::nullopt;
      }
      bool has_m = std::find(vars.begin(), vars.end(), 'm') != vars.end();
      for (int n = 1; n <= kLimit; ++n) {
        bool first_feasible_m = true;
        for (int m = 1; m <= (has_m ? kLimit : 1); ++m) {
          std::map<char, int> a;
          a['n'] = n;
          if (has_m) a['m'] = m;
          bool ok = true;
          for (const auto& [v, lo] : lower)
            if (a.count(v) && a.at(v) < lo) ok = false;
          if (!ok || !detail::feasible(cs, a)) continue;
          int st = expand(a, false);
          if (st == 2) return a;
          if (st == 1) {
            // dimensions only grow with the parameters
            if (first_feasible_m) return std::nullopt;
            break;
          }
          first_feasible_m = false;
        }
      }
      return std::nullopt;
    };

    std::vector<std::map<char, int>> assignments;
    auto base = search({});
    if (!base) continue;
    assignments.push_back(*base);
    for (char v : vars) {
      auto bumped = search({{v, base->at(v) + 1}});
      if (bumped && std::find(assignments.begin(), assignments.end(), *bumped) ==
                        assignments.end())
        assignments.push_back(*bumped);
    }
    for (const auto& a : assignments) expand(a, true);
  }
  return out;
}

// the semisimple part together with the full per-summand scalar torus
inline rep::PairSpec saturated(const rep::PairSpec& spec) {
  rep::PairSpec s = spec;
  s.center.clear();
  for (std::size_t i = 0; i < spec.summands.size(); ++i) {
    std::vector<int> gen(spec.summands.size(), 0);
    gen[i] = 1;
    s.center.push_back(std::move(gen));
  }
  return s;
}

struct EntryReport {
  std::string entry_id, variant, params, text;
  long dim = 0;
  bool literal_reading = false;
  std::vector<std::string> flags;

  sph::Verdict verdict;          // saturated configuration (the table claim)
  sph::Verdict verdict_printed;  // exactly the printed center
  sph::NormalizerReport normalizer_printed;
  bool normalizer_condition_with_h1 = false;
  la::Int max_mult_d4{0};
  bool profile_all_one = false;
  bool pass = false;
  long millis = 0;
};

inline EntryReport verify_entry(const Instance& inst, const la::SampleConfig& cfg,
                                unsigned profile_dmax = 4, std::size_t cap = 64) {
  auto t0 = std::chrono::steady_clock::now();
  EntryReport r;
  r.entry_id = inst.entry_id;
  r.variant = inst.variant;
  r.params = inst.params;
  r.text = inst.text;
  r.dim = inst.dim;
  r.literal_reading = inst.literal_reading;
  r.flags = inst.flags;

  rep::PairSpec sat = saturated(inst.spec);
  rep::SubalgebraInGl sub_sat = rep::assemble(sat, cap);
  r.verdict = sph::is_spherical_projective(sub_sat, cfg);

  rep::SubalgebraInGl sub_printed = rep::assemble(inst.spec, cap);
  r.verdict_printed = sph::is_spherical_projective(sub_printed, cfg);
  r.normalizer_printed = sph::structural_normalizer(sub_printed);
  {
    rep::SubalgebraInGl with_h1 = sub_printed;
    with_h1.center.push_back(std::vector<int>(inst.spec.summands.size(), 1));
    r.normalizer_condition_with_h1 = sph::structural_normalizer(with_h1).condition;
  }

  r.profile_all_one = true;
  for (const auto& [d, m] : mf::multiplicity_profile(sat, profile_dmax, cap)) {
    if (m > r.max_mult_d4) r.max_mult_d4 = m;
    if (m > 1) r.profile_all_one = false;
  }
  r.pass = (r.verdict.status == sph::Status::Spherical) && r.profile_all_one;
  r.millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                 std::chrono::steady_clock::now() - t0)
                 .count();
  return r;
}

inline std::string tsv_header() {
  return "entry_id\tparams\tdimW\tverdict\tnormalizer_ok\tmax_mult_d<=4\tmillis";
}

inline std::string tsv_row(const EntryReport& r) {
  std::ostringstream os;
  std::string id = r.entry_id;
  if (!r.variant.empty()) id += ":" + r.variant;
  os << id << "\t" << (r.params.empty() ? "-" : r.params) << "\t" << r.dim << "\t"
     << sph::status_name(r.verdict.status) << "\t"
     << (r.normalizer_printed.condition ? "true" : "false") << "\t"
     << r.max_mult_d4.get_str() << "\t" << r.millis;
  return os.str();
}

// ---------------------------------------------------------------------------
// Curated negative controls.

enum class Expectation { DimensionCount, MultiplicityCertificate, Computed, RecordOnly };

struct NegativeControl {
  std::string label;
  std::string text;
  Expectation expect;
};

inline std::vector<NegativeControl> negative_controls() {
  return {
      {"neg.dim.sl2-quartic", "sl(2): 4w1", Expectation::DimensionCount},
      {"neg.dim.sl3-adjoint", "sl(3): w1+w2", Expectation::DimensionCount},
      {"neg.mult.sl2-triple",
       "sl(2): w1 ++ w1 ++ w1 [h(1,0,0), h(0,1,0), h(0,0,1)]",
       Expectation::MultiplicityCertificate},
      {"neg.computed.sl4-two-halves", "sl(4): w2 ++ w2 [h(1,0), h(0,1)]",
       Expectation::Computed},
      {"rec.normalizer.sl3-pair", "sl(3)+sl(3): w1*w1", Expectation::RecordOnly},
  };
}

struct ControlReport {
  NegativeControl control;
  sph::Verdict verdict;
  sph::NormalizerReport normalizer;
  bool pass = false;
};

inline ControlReport run_negative_control(const NegativeControl& c,
                                          const la::SampleConfig& cfg,
                                          unsigned dmax = 6) {
  ControlReport r;
  r.control = c;
  rep::PairSpec spec = dsl::parse_pair_spec(c.text);
  rep::SubalgebraInGl sub = rep::assemble(spec);
  r.verdict = sph::is_spherical_projective(sub, cfg, spec, dmax);
  r.normalizer = sph::structural_normalizer(sub);
  switch (c.expect) {
    case Expectation::DimensionCount:
      r.pass = r.verdict.status == sph::Status::NotSpherical &&
               r.verdict.dimension_count.has_value();
      break;
    case Expectation::MultiplicityCertificate:
      r.pass = r.verdict.status == sph::Status::NotSpherical &&
               r.verdict.certificate.has_value();
      break;
    case Expectation::Computed:
      r.pass = r.verdict.status == sph::Status::NotSpherical &&
               (r.verdict.dimension_count.has_value() || r.verdict.certificate.has_value());
      break;
    case Expectation::RecordOnly:
      r.pass = true;
      break;
  }
  return r;
}

}  // namespace spherocheck::tab
