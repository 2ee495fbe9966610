#pragma once

#include "bfgp/core.hpp"

#include <string>
#include <vector>

namespace bfgp {

struct SuiteSpec {
    std::string domain_name;
    std::vector<int> sizes;   // one instance parameter each (length, count, ...)
    std::size_t n_lines = 0;  // 0 = the registry default
};

struct SuiteInfo {
    std::string name;
    bool propositional = false;
    std::vector<int> default_sizes;
    std::size_t n_lines = 0;
    std::size_t seed_per_thread = 1;
    int min_size = 1;
    int max_size = 64;
    std::string summary;
};

// The nine benchmark domains in a fixed order.
const std::vector<SuiteInfo> &suite_registry();

// Throws std::invalid_argument for an unknown name.
const SuiteInfo &suite_info(const std::string &name);

SuiteSpec default_suite(const std::string &name);

/*
  Deterministic problem set for the named domain: identical specs give
  byte-identical serializations. Throws std::invalid_argument for an unknown
  domain or sizes outside the domain's range.
*/
ProblemSet generate_suite(const SuiteSpec &spec);

std::size_t suite_lines(const SuiteSpec &spec);

}  // namespace bfgp
