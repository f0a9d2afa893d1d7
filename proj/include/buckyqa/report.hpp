// Machine (JSON) and human (aligned text) renderings of assessment and chart runs.
// JSON field names are listed in README.md and kept stable.
#ifndef BUCKYQA_REPORT_HPP
#define BUCKYQA_REPORT_HPP

#include <iosfwd>

#include <json.hpp>

#include "buckyqa/pipeline.hpp"

namespace buckyqa {

inline constexpr const char* kReportSchema = "buckyqa.report/1";

[[nodiscard]] nlohmann::json to_json(const AssessmentReport& report);
void write_json_report(const AssessmentReport& report, std::ostream& out);
void write_text_report(const AssessmentReport& report, std::ostream& out);

/// One line per chart plus clustering, e.g. "CUSUM d: 10".
void write_chart_summary(const ChartReport& report, std::ostream& out);

}  // namespace buckyqa

#endif  // BUCKYQA_REPORT_HPP
