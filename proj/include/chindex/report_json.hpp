// Copyright (c) the chindex authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CHINDEX_REPORT_JSON_HPP
#define CHINDEX_REPORT_JSON_HPP

#include <string>

#include "chindex/homotopy.hpp"
#include "chindex/index_engine.hpp"

namespace chindex {

/// Canonical JSON: keys in sorted order, floats printed with 17 significant
/// digits, no locale dependence; re-running a scenario byte-reproduces the
/// document. Infinite gap ratios serialize as null.
std::string index_report_json(const IndexReport& rep);
std::string sweep_report_json(const SweepReport& rep);

/// Rows "side,position,value" over the stored singular-value tails.
std::string singular_values_csv(const IndexReport& rep);

/// Rows "s,index" (empty index when undefined).
std::string sweep_csv(const SweepReport& rep);

}  // namespace chindex

#endif
