/* Copyright 2026 The CMM Co-Simulation Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "cmm/perception/evaluation.h"

#include <algorithm>
#include <array>
#include <numeric>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "cmm/common/text_format.h"
#include "cmm/perception/oriented_iou.h"

namespace cmm {
namespace {

constexpr std::array<AgentClass, 3> kClasses = {
    AgentClass::kCar, AgentClass::kTruck, AgentClass::kPedestrian};

struct RankedDetection {
  double confidence;
  size_t order;  // tie-break: input order across frames
  AgentClass cls;
  bool true_positive;
};

}  // namespace

double F1Score(double precision, double recall) {
  const double sum = precision + recall;
  return sum > 0.0 ? 2.0 * precision * recall / sum : 0.0;
}

double AveragePrecision(const std::vector<bool>& is_true_positive,
                        int64_t num_ground_truth) {
  if (num_ground_truth <= 0 || is_true_positive.empty()) return 0.0;
  const size_t n = is_true_positive.size();
  std::vector<double> precision(n);
  std::vector<double> recall(n);
  int64_t tp = 0;
  for (size_t k = 0; k < n; ++k) {
    if (is_true_positive[k]) ++tp;
    precision[k] = static_cast<double>(tp) / static_cast<double>(k + 1);
    recall[k] = static_cast<double>(tp) / static_cast<double>(num_ground_truth);
  }
  for (size_t k = n - 1; k-- > 0;) {
    precision[k] = std::max(precision[k], precision[k + 1]);
  }
  double ap = 0.0;
  double previous_recall = 0.0;
  for (size_t k = 0; k < n; ++k) {
    ap += (recall[k] - previous_recall) * precision[k];
    previous_recall = recall[k];
  }
  return ap;
}

EvalReport EvaluateFrames(std::span<const FrameEvaluationInput> frames,
                          double iou_threshold) {
  EvalReport report;
  report.iou_threshold = iou_threshold;
  std::vector<RankedDetection> ranked;
  std::array<int64_t, kClasses.size()> gt_per_class{};

  for (const FrameEvaluationInput& frame : frames) {
    for (const LabeledBox& gt : frame.ground_truth) {
      ++gt_per_class[static_cast<int>(gt.cls)];
    }
    std::vector<size_t> order(frame.detections.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      return frame.detections[a].confidence > frame.detections[b].confidence;
    });
    std::vector<bool> matched(frame.ground_truth.size(), false);
    std::vector<bool> tp_flags(frame.detections.size(), false);
    for (size_t d : order) {
      const Detection& det = frame.detections[d];
      double best_iou = -1.0;
      int best_gt = -1;
      for (size_t g = 0; g < frame.ground_truth.size(); ++g) {
        const LabeledBox& gt = frame.ground_truth[g];
        if (matched[g] || gt.cls != det.cls) continue;
        const absl::StatusOr<double> iou = OrientedIou(det.box, gt.footprint());
        const double value = iou.ok() ? *iou : 0.0;
        if (value > best_iou) {
          best_iou = value;
          best_gt = static_cast<int>(g);
        }
      }
      if (best_gt >= 0 && best_iou >= iou_threshold) {
        matched[best_gt] = true;
        tp_flags[d] = true;
      }
    }
    for (size_t d = 0; d < frame.detections.size(); ++d) {
      ranked.push_back({frame.detections[d].confidence, ranked.size(),
                        frame.detections[d].cls, tp_flags[d]});
    }
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const RankedDetection& a, const RankedDetection& b) {
                     return a.confidence > b.confidence;
                   });

  double ap_sum = 0.0;
  int classes_with_gt = 0;
  for (AgentClass cls : kClasses) {
    ClassMetrics m;
    m.cls = cls;
    m.num_ground_truth = gt_per_class[static_cast<int>(cls)];
    std::vector<bool> flags;
    for (const RankedDetection& r : ranked) {
      if (r.cls != cls) continue;
      flags.push_back(r.true_positive);
      if (r.true_positive) ++m.true_positives;
    }
    m.num_detections = static_cast<int64_t>(flags.size());
    if (m.num_detections == 0 && m.num_ground_truth == 0) continue;
    m.precision = m.num_detections > 0
                      ? static_cast<double>(m.true_positives) / m.num_detections
                      : 0.0;
    m.recall = m.num_ground_truth > 0
                   ? static_cast<double>(m.true_positives) / m.num_ground_truth
                   : 0.0;
    m.f1 = F1Score(m.precision, m.recall);
    m.ap = AveragePrecision(flags, m.num_ground_truth);
    if (m.num_ground_truth > 0) {
      ap_sum += m.ap;
      ++classes_with_gt;
    }
    report.num_ground_truth += m.num_ground_truth;
    report.num_detections += m.num_detections;
    report.true_positives += m.true_positives;
    report.per_class.push_back(m);
  }
  if (report.num_detections > 0) {
    report.precision =
        static_cast<double>(report.true_positives) / report.num_detections;
  }
  if (report.num_ground_truth > 0) {
    report.recall =
        static_cast<double>(report.true_positives) / report.num_ground_truth;
  }
  report.f1 = F1Score(report.precision, report.recall);
  report.ap = classes_with_gt > 0 ? ap_sum / classes_with_gt : 0.0;
  return report;
}

EvalReport Evaluate(std::span<const Detection> detections,
                    std::span<const LabeledBox> ground_truth,
                    double iou_threshold) {
  const FrameEvaluationInput frame{{detections.begin(), detections.end()},
                                   {ground_truth.begin(), ground_truth.end()}};
  return EvaluateFrames(std::span<const FrameEvaluationInput>(&frame, 1),
                        iou_threshold);
}

void WriteEvalCsv(const EvalReport& report, std::ostream& out) {
  out << "class,iou_threshold,num_gt,num_det,tp,precision,recall,ap,f1\n";
  auto row = [&](std::string_view name, int64_t gt, int64_t det, int64_t tp,
                 double p, double r, double ap, double f1) {
    out << name << ',' << FormatDouble(report.iou_threshold) << ',' << gt << ','
        << det << ',' << tp << ',' << FormatDouble(p) << ',' << FormatDouble(r)
        << ',' << FormatDouble(ap) << ',' << FormatDouble(f1) << '\n';
  };
  for (const ClassMetrics& m : report.per_class) {
    row(AgentClassName(m.cls), m.num_ground_truth, m.num_detections,
        m.true_positives, m.precision, m.recall, m.ap, m.f1);
  }
  row("All", report.num_ground_truth, report.num_detections,
      report.true_positives, report.precision, report.recall, report.ap,
      report.f1);
}

std::string FormatEvalTable(const EvalReport& report) {
  std::string out = absl::StrFormat(
      "Evaluation under IoU@%02d (in %%)\n%-12s %10s %10s %10s %10s\n",
      static_cast<int>(std::lround(report.iou_threshold * 100)), "Class",
      "Precision", "Recall", "AP", "F1");
  auto row = [&](const std::string& name, double p, double r, double ap,
                 double f1) {
    absl::StrAppend(&out, absl::StrFormat("%-12s %10.2f %10.2f %10.2f %10.2f\n",
                                          name, 100 * p, 100 * r, 100 * ap,
                                          100 * f1));
  };
  for (const ClassMetrics& m : report.per_class) {
    row(std::string(AgentClassName(m.cls)), m.precision, m.recall, m.ap, m.f1);
  }
  row("All", report.precision, report.recall, report.ap, report.f1);
  return out;
}

}  // namespace cmm
