// Copyright (c) the chindex authors
// SPDX-License-Identifier: Apache-2.0

#include "chindex/report_json.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace chindex {

namespace {

std::string fmt_double(double v) {
  if (std::isinf(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

std::string double_array(const std::vector<double>& vs) {
  std::string out = "[";
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) out += ",";
    out += fmt_double(vs[i]);
  }
  out += "]";
  return out;
}

std::string truncation_json(const IndexReport::Truncation& t) {
  std::ostringstream os;
  os << "{";
  os << "\"K\":" << t.K << ",";
  if (t.K_coarse) os << "\"K_coarse\":" << *t.K_coarse << ",";
  os << "\"boundary_band\":" << t.boundary_band << ",";
  os << "\"mass_threshold\":" << fmt_double(t.mass_threshold) << ",";
  os << "\"rel_tol\":" << fmt_double(t.rel_tol) << ",";
  os << "\"scenario\":" << quote(t.scenario);
  if (t.zero_blocks_coarse) os << ",\"zero_blocks_coarse\":" << *t.zero_blocks_coarse;
  os << "}";
  return os.str();
}

}  // namespace

std::string index_report_json(const IndexReport& rep) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"boundary_discarded_L\": " << rep.boundary_discarded_L << ",\n";
  os << "  \"boundary_discarded_R\": " << rep.boundary_discarded_R << ",\n";
  os << "  \"dim_ker_L\": " << rep.dim_ker_L << ",\n";
  os << "  \"dim_ker_R\": " << rep.dim_ker_R << ",\n";
  os << "  \"finite\": " << (rep.finite ? "true" : "false") << ",\n";
  os << "  \"gap_ratio_L\": " << fmt_double(rep.gap_ratios.first) << ",\n";
  os << "  \"gap_ratio_R\": " << fmt_double(rep.gap_ratios.second) << ",\n";
  os << "  \"ill_conditioned\": " << (rep.ill_conditioned ? "true" : "false") << ",\n";
  os << "  \"index\": " << (rep.index ? std::to_string(*rep.index) : "null") << ",\n";
  os << "  \"note\": " << quote(rep.note) << ",\n";
  os << "  \"singular_value_tail_L\": " << double_array(rep.sv_tail_L) << ",\n";
  os << "  \"singular_value_tail_R\": " << double_array(rep.sv_tail_R) << ",\n";
  os << "  \"truncation\": " << truncation_json(rep.truncation) << ",\n";
  os << "  \"zero_blocks\": " << rep.zero_blocks << "\n";
  os << "}\n";
  return os.str();
}

std::string sweep_report_json(const SweepReport& rep) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"continuity\": " << double_array(rep.continuity) << ",\n";
  os << "  \"continuity_sobolev\": " << double_array(rep.continuity_sobolev) << ",\n";
  os << "  \"steps\": [\n";
  for (std::size_t i = 0; i < rep.steps.size(); ++i) {
    const auto& st = rep.steps[i];
    os << "    {\"finite\": " << (st.report.finite ? "true" : "false")
       << ", \"index\": " << (st.report.index ? std::to_string(*st.report.index) : "null")
       << ", \"s\": " << fmt_double(st.s) << ", \"zero_blocks\": " << st.report.zero_blocks
       << "}";
    os << (i + 1 < rep.steps.size() ? ",\n" : "\n");
  }
  os << "  ],\n";
  os << "  \"verdict\": " << quote(rep.verdict.str()) << "\n";
  os << "}\n";
  return os.str();
}

std::string singular_values_csv(const IndexReport& rep) {
  std::ostringstream os;
  os << "side,position,value\n";
  for (std::size_t i = 0; i < rep.sv_tail_L.size(); ++i)
    os << "L," << i << "," << fmt_double(rep.sv_tail_L[i]) << "\n";
  for (std::size_t i = 0; i < rep.sv_tail_R.size(); ++i)
    os << "R," << i << "," << fmt_double(rep.sv_tail_R[i]) << "\n";
  return os.str();
}

std::string sweep_csv(const SweepReport& rep) {
  std::ostringstream os;
  os << "s,index\n";
  for (const auto& st : rep.steps) {
    os << fmt_double(st.s) << ",";
    if (st.report.index) os << *st.report.index;
    os << "\n";
  }
  return os.str();
}

}  // namespace chindex
