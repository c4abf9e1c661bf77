#ifndef SMTKIT_REPORT_H_
#define SMTKIT_REPORT_H_

#include <string>
#include <vector>

#include "json.hpp"
#include "smtkit/cleaning.h"
#include "smtkit/corpus.h"
#include "smtkit/evaluation.h"
#include "smtkit/mixture.h"
#include "smtkit/ngram_model.h"
#include "smtkit/orientation.h"
#include "smtkit/smoothing.h"
#include "smtkit/tagged.h"

namespace smtkit {

// JSON views of the library's result types, used by the command line tool.
nlohmann::json to_json(const CoverageReport& report);
nlohmann::json to_json(const CorruptionFinding& finding);
nlohmann::json to_json(const DiagnosticsReport& report);
nlohmann::json to_json(const PerplexityResult& result);
nlohmann::json to_json(const TuneResult& result);
nlohmann::json to_json(const Discount& discount);
nlohmann::json to_json(const BleuResult& result);
nlohmann::json to_json(const NistResult& result);
nlohmann::json to_json(const TerResult& result);
nlohmann::json to_json(const MeteorResult& result);
nlohmann::json to_json(const MetricReport& report);
// Records of (orientation, direction, count, probability), plus lexical
// tables when present.
nlohmann::json to_json(const OrientationCounts& counts);

// Line-oriented summaries for terminal output.
std::string describe(const DiagnosticsReport& report);
std::string describe(const CoverageReport& report);

}  // namespace smtkit

#endif  // SMTKIT_REPORT_H_
