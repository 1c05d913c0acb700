#pragma once

#include <string>

#include "doodle/corpus.hpp"
#include "doodle/smooth.hpp"

namespace doodle {

struct PipelineReport {
  int n = 0;
  int traceLength = 0;
  int coreEdges = 0;
  int coreInflections = 0;
  int maxCoreEdgeTally = 0;       // over non-loop core edges
  int maxCoreLoopTally = 0;       // over subdivided loop edges
  std::vector<int> stepDeltas;    // inflection change of every reinsertion
  int finalInflections = 0;
  int bound = 0;                  // 2n
  bool boundSatisfied = false;
  bool mapFidelity = false;
  bool perEdgeLemmaHolds = true;  // core edges <= 1, loops 0
  bool budgetHolds = true;        // every reinsertion delta <= +2
  double seconds = 0;

  bool ok() const {
    return boundSatisfied && mapFidelity && perEdgeLemmaHolds && budgetHolds;
  }
};

struct PipelineResult {
  std::vector<PiecewiseCurve> curves;
  PipelineReport report;
  Doodle reconstructed;
};

/// The full construction: reduce, subdivide, embed, smooth, reinsert, place
/// free loops and nested components, then re-measure everything.
PipelineResult run_pipeline(const Doodle& d, const SmoothingParams& p = {});

/// Stable text form of a report (golden-file friendly).
std::string format_report(const PipelineReport& r);

struct CorpusSummary {
  int total = 0;
  int failures = 0;
  int treelikeCount = 0;
  int treelikeFailures = 0;
  double maxRatio = 0;          // max I / 2n over n >= 1
  double maxTreelikeRatio = 0;  // max I / bound for tree-like curves
  std::string text;
  bool ok = true;
};

/// Runs the pipeline over a corpus; tree-like members are also drawn with the
/// dedicated tree construction and checked against its bound.
CorpusSummary verify_corpus(const CorpusSpec& spec, const SmoothingParams& p = {});

struct ProbeRow {
  int n = 0;
  int measured = 0;
  bool withinConjecture = false;  // I <= n + 1
};

/// Conjecture probe: measured inflections versus n+1 on connected
/// single-strand doodles.  Collects data; proves nothing.
std::vector<ProbeRow> conjecture_probe(const std::vector<Doodle>& corpus,
                                       const SmoothingParams& p = {});

}  // namespace doodle
