#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "txnet/distfit.hpp"
#include "txnet/ingest.hpp"
#include "txnet/linkcomm.hpp"
#include "txnet/metrics.hpp"

namespace txnet::json_io {

using Json = nlohmann::ordered_json;

Json to_json(const ingest::CaptureSummary& summary);

// The metric-table fields plus snapshot_label and generated_at_ms; undefined
// distances serialize as null.
Json to_json(const metrics::MetricsReport& report, const std::string& label, std::int64_t generated_at_ms);

Json to_json(const distfit::ModelFit& fit);
Json to_json(const distfit::GofResult& gof);
Json to_json(const distfit::GrowthFit& fit);

// Communities as [source_address, target_address] pairs (oriented like the
// first arc between the two nodes), plus per-community degree profiles.
Json to_json(const graph::TxGraph& g, const linkcomm::CommunityPartition& partition,
             const std::vector<linkcomm::CommunityProfile>& profiles);

// Aggregate view of a partition document written by the function above.
// Throws Error(invalid_partition) on a structurally invalid document.
Json summarize_partition(const Json& document, std::size_t top = 5);

}  // namespace txnet::json_io
