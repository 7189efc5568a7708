#pragma once

// JSON assembly for CLI reports. Key order is alphabetical (nlohmann's
// default object ordering), so identical inputs render identical bytes
// modulo the timing field.

#include <string>

#include <json.hpp>

#include "spherocheck/mult_free.hpp"
#include "spherocheck/sphericity.hpp"
#include "spherocheck/table61.hpp"

namespace spherocheck::report {

inline constexpr const char* kSchema = "spherocheck-report/1";
inline constexpr const char* kToolVersion = "0.1.0";

using nlohmann::json;

inline json verdict_json(const sph::Verdict& v, const lie::Lattice* lat = nullptr) {
  json j;
  j["status"] = sph::status_name(v.status);
  j["trials_used"] = v.trials_used;
  if (v.witness) {
    json w;
    w["rank"] = v.witness->achieved_rank;
    w["seed"] = v.witness->seed;
    w["trial"] = v.witness->trial;
    json coords = json::array();
    for (const auto& x : v.witness->point) coords.push_back(la::to_string(x));
    w["point"] = coords;
    j["witness"] = w;
  }
  if (v.dimension_count) {
    json c;
    c["kind"] = "DimensionCount";
    c["borel_count"] = v.dimension_count->borel_count;
    c["effective_borel_dim"] = v.dimension_count->effective_borel_dim;
    c["required"] = v.dimension_count->required;
    j["certificate"] = c;
  }
  if (v.certificate) {
    json c;
    c["kind"] = "MultiplicityCertificate";
    c["degree"] = v.certificate->degree;
    c["multiplicity"] = v.certificate->multiplicity.get_str();
    if (lat) c["component"] = lie::key_to_string(*lat, v.certificate->component);
    j["certificate"] = c;
  }
  return j;
}

inline json decomposition_json(const mf::GradedDecomposition& dec) {
  json j;
  j["degree"] = dec.degree;
  j["total_dim"] = dec.total_dim.get_str();
  json comps = json::array();
  for (const auto& c : dec.components) {
    json e;
    e["component"] = lie::key_to_string(dec.lattice, c.highest_weight);
    e["multiplicity"] = c.multiplicity.get_str();
    e["dim"] = c.dim.get_str();
    comps.push_back(e);
  }
  j["components"] = comps;
  return j;
}

inline json entry_report_json(const tab::EntryReport& r) {
  json j;
  j["entry_id"] = r.entry_id;
  j["variant"] = r.variant;
  j["params"] = r.params;
  j["spec"] = r.text;
  j["dim_w"] = r.dim;
  j["literal_reading"] = r.literal_reading;
  j["flags"] = r.flags;
  j["verdict_saturated"] = verdict_json(r.verdict);
  j["verdict_printed_center"] = verdict_json(r.verdict_printed);
  json n;
  n["dim"] = r.normalizer_printed.normalizer_dim;
  n["centralizer_dim"] = r.normalizer_printed.centralizer_dim;
  n["condition_printed"] = r.normalizer_printed.condition;
  n["condition_with_h1"] = r.normalizer_condition_with_h1;
  j["normalizer"] = n;
  j["max_mult_d4"] = r.max_mult_d4.get_str();
  j["profile_all_one"] = r.profile_all_one;
  j["pass"] = r.pass;
  j["millis"] = r.millis;
  return j;
}

inline json envelope(const std::string& command, const std::string& spec_text,
                     std::uint64_t seed, long millis, json payload) {
  json j;
  j["schema"] = kSchema;
  j["tool_version"] = kToolVersion;
  j["command"] = command;
  if (!spec_text.empty()) j["spec"] = spec_text;
  j["seed"] = seed;
  j["timing_ms"] = millis;
  j["result"] = std::move(payload);
  return j;
}

}  // namespace spherocheck::report
