#pragma once

#include <map>
#include <string>
#include <vector>

#include "entailguard/detector.hpp"

namespace entailguard {

// Everything needed to reproduce a run: resolved configuration, backend
// descriptors, paths, and counters. With a mock or remote backend, a
// manifest plus the input files reproduces the outputs bit-exactly.
struct RunManifest {
    std::string tool_version;
    std::string command;    // detect | compare
    std::string timestamp;  // ISO-8601 UTC; SOURCE_DATE_EPOCH overrides the clock

    std::string input_path;
    std::string gold_path;
    std::string output_path;

    std::string mode;
    double threshold = 0.5;
    std::string direction;
    std::string decision;
    int jobs = 1;
    bool strict = true;

    std::map<std::string, BackendDescriptor> backends;  // task name -> descriptor

    std::size_t records = 0;   // elements in the input array
    std::size_t dropped = 0;   // invalid records skipped (lenient parse)
    std::size_t verdicts = 0;  // successful verdicts written
    std::size_t failures = 0;  // failure verdicts (lenient detection)
    DetectStats cache_stats;

    std::vector<std::string> warnings;

    std::string to_json() const;
    void save(const std::string& path) const;
};

std::string iso_timestamp_utc();

}  // namespace entailguard
