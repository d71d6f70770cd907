#pragma once

#include "gevrey/experiment.hpp"

#include <functional>
#include <string>
#include <vector>

namespace gevrey::detail {

struct CaseOutcome {
    double measured = 0.0;
    double bound = 0.0;
    double margin = 0.0;
};

struct SuiteCase {
    std::string case_id;
    std::vector<double> parameters;
    std::function<CaseOutcome()> run;
};

struct SuiteDef {
    std::string name;
    std::string description;
    std::vector<std::string> parameter_names;
    std::vector<std::string> sweep_names;
    /// Default for tolerances["margin"].
    double margin_tolerance = 0.0;
    std::function<std::vector<SuiteCase>(const SuiteConfig&)> build;
};

const std::vector<SuiteDef>& suite_registry();
const SuiteDef& find_suite(const std::string& name);

}  // namespace gevrey::detail
