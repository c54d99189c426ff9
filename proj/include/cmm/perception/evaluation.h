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

#ifndef CMM_PERCEPTION_EVALUATION_H_
#define CMM_PERCEPTION_EVALUATION_H_

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "cmm/perception/detection.h"
#include "cmm/scenario/scenario.h"

namespace cmm {

// Harmonic mean of precision and recall; 0 when both are 0.
double F1Score(double precision, double recall);

// Area under the interpolated precision envelope of a confidence-ranked
// detection list (all-point interpolation). `is_true_positive` is ordered by
// decreasing confidence.
double AveragePrecision(const std::vector<bool>& is_true_positive,
                        int64_t num_ground_truth);

struct ClassMetrics {
  AgentClass cls = AgentClass::kCar;
  int64_t num_ground_truth = 0;
  int64_t num_detections = 0;
  int64_t true_positives = 0;
  double precision = 0.0;
  double recall = 0.0;
  double ap = 0.0;
  double f1 = 0.0;
};

struct EvalReport {
  double iou_threshold = 0.5;
  int64_t num_ground_truth = 0;
  int64_t num_detections = 0;
  int64_t true_positives = 0;
  // Pooled over classes; AP is the mean over classes with ground truth.
  double precision = 0.0;
  double recall = 0.0;
  double ap = 0.0;
  double f1 = 0.0;
  std::vector<ClassMetrics> per_class;  // classes seen in either input
};

struct FrameEvaluationInput {
  std::vector<Detection> detections;
  std::vector<LabeledBox> ground_truth;
};

// Greedy matching per frame in descending confidence: a detection is a true
// positive when its best-overlapping unmatched ground truth of the same class
// reaches `iou_threshold`.
EvalReport EvaluateFrames(std::span<const FrameEvaluationInput> frames,
                          double iou_threshold);

EvalReport Evaluate(std::span<const Detection> detections,
                    std::span<const LabeledBox> ground_truth,
                    double iou_threshold);

// CSV: class,iou_threshold,num_gt,num_det,tp,precision,recall,ap,f1 with
// fractional values. The pooled row is labelled "All".
void WriteEvalCsv(const EvalReport& report, std::ostream& out);

// Human-readable table with Precision / Recall / AP / F1 columns in percent.
std::string FormatEvalTable(const EvalReport& report);

}  // namespace cmm

#endif  // CMM_PERCEPTION_EVALUATION_H_
