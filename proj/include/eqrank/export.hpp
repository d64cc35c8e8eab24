#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "eqrank/corpus.hpp"
#include "eqrank/partition.hpp"
#include "eqrank/pipeline.hpp"
#include "eqrank/quality.hpp"
#include "eqrank/reindex.hpp"

namespace eqrank {

using Json = nlohmann::ordered_json;

// `paper_id<TAB>cluster_id`, one line per vertex in index order.
void write_partition_tsv(std::ostream& out, const Partition& p, const CorpusStore& store);

// Reads a partition TSV back over the store's index space. Every vertex in
// [0, n) must appear exactly once; n is the highest listed index + 1.
Partition read_partition_tsv(std::istream& in, const CorpusStore& store,
                             const std::string& name = "partition");

Json partition_summary(const SnapshotResult& r);

// `iteration,reassigned_count,reassigned_fraction`.
void write_trace_csv(std::ostream& out, const ReindexResult& r);

Json pair_report(const SnapshotResult& earlier, const SnapshotResult& later,
                 const PairResult& pair, const CorpusStore& store);

// `pair,CSC1,CSC2,TMC,TMC_cut_<k>...`; empty field when a cut has no
// eligible paper.
void write_series_csv(std::ostream& out, std::span<const SnapshotResult> snapshots,
                      std::span<const PairResult> pairs, const std::vector<std::uint32_t>& cuts);

Json theme_summaries_json(std::span<const ThemeSummary> themes, const CorpusStore& store,
                          std::span<const SnapshotResult> series);

std::string format_real(double value);

}  // namespace eqrank
