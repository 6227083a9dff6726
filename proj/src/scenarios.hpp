#pragma once

#include <vector>

#include "pdolab/experiments.hpp"

namespace pdolab::scenario {

std::vector<ReportRecord> boundedness_calibration(const Context& c);
std::vector<ReportRecord> composition_order(const Context& c);
std::vector<ReportRecord> index_invariance(const Context& c);
std::vector<ReportRecord> interpolation_suite(const Context& c);
std::vector<ReportRecord> mollify_convergence(const Context& c);
std::vector<ReportRecord> oscint_consistency(const Context& c);
std::vector<ReportRecord> parametrix_residual(const Context& c);
std::vector<ReportRecord> partition_check(const Context& c);
std::vector<ReportRecord> perturbation_openness(const Context& c);
std::vector<ReportRecord> quantization_anchors(const Context& c);
std::vector<ReportRecord> smoothing_split(const Context& c);

}  // namespace pdolab::scenario
