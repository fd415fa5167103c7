#pragma once

#include <array>
#include <filesystem>
#include <string>

namespace entailguard {

// Writes a small random-weight cross-encoder model directory in the layout
// LocalBackend::load expects. Deterministic for a given spec, so demo and
// test runs are reproducible. Not a trained model: judgments are arbitrary
// but valid and stable.
struct DemoModelSpec {
    std::size_t hidden = 16;
    std::size_t layers = 2;
    std::size_t heads = 2;
    std::size_t intermediate = 32;
    std::size_t max_positions = 48;
    unsigned seed = 7;
    std::array<std::string, 3> label_order = {"entailment", "neutral", "contradiction"};
    std::string name = "demo-cross-encoder";
    bool multilingual = false;
};

void write_demo_model(const std::filesystem::path& dir, const DemoModelSpec& spec = {});

}  // namespace entailguard
