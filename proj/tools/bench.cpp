// Compares the OpenMP kernels against their serial references, and parallel
// detection against the single-job path, on synthetic workloads.

#include <chrono>
#include <cstring>
#include <iostream>
#include <random>
#include <string>

#include "entailguard/demo_model.hpp"
#include "entailguard/detector.hpp"
#include "entailguard/kernels.hpp"
#include "entailguard/local_backend.hpp"
#include "entailguard/mock_backend.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace entailguard;
namespace chrono = std::chrono;

namespace {

double ms_since(chrono::steady_clock::time_point start) {
    return chrono::duration<double, std::milli>(chrono::steady_clock::now() - start).count();
}

Mat random_mat(std::size_t rows, std::size_t cols, std::mt19937& rng) {
    std::normal_distribution<float> dist(0.0f, 1.0f);
    Mat m(rows, cols);
    for (auto& v : m.data) v = dist(rng);
    return m;
}

void bench_matmul(std::size_t n, int reps) {
    std::mt19937 rng(11);
    const Mat a = random_mat(n, n, rng);
    const Mat b = random_mat(n, n, rng);
    Mat c;

    auto t0 = chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) kernels::serial::matmul_nt(a, b, 1.0f, c);
    const double serial_ms = ms_since(t0) / reps;
    const float serial_checksum = c.data[0] + c.data[c.data.size() - 1];

    t0 = chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) kernels::matmul_nt(a, b, 1.0f, c);
    const double parallel_ms = ms_since(t0) / reps;
    const float parallel_checksum = c.data[0] + c.data[c.data.size() - 1];

    std::cout << "matmul_nt " << n << "x" << n << ": serial " << serial_ms << " ms, parallel "
              << parallel_ms << " ms, speedup " << serial_ms / parallel_ms
              << (serial_checksum == parallel_checksum ? "" : "  CHECKSUM MISMATCH") << "\n";
}

void bench_detect(const std::filesystem::path& model_dir, std::size_t n_samples, int jobs) {
    MockBackend mock;
    auto local = LocalBackend::load(model_dir);

    std::vector<Sample> samples;
    std::mt19937 rng(13);
    const char* words[] = {"water", "pool", "cat", "animal", "bank", "cash", "bottle", "machine"};
    for (std::size_t i = 0; i < n_samples; ++i) {
        Sample s;
        s.id = std::to_string(i);
        s.task = TaskKind::PG;
        std::string a, b;
        for (int w = 0; w < 12; ++w) {
            a += words[rng() % 8] + std::string(" ");
            b += words[rng() % 8] + std::string(" ");
        }
        s.src = a + std::to_string(i);  // unique texts defeat the cache
        s.hyp = b + std::to_string(i);
        samples.push_back(std::move(s));
    }

    DetectionConfig config;
    config.mode = Mode::Bidirectional;
    config.backend_by_task = {{TaskKind::DM, local->descriptor()},
                              {TaskKind::MT, local->descriptor()},
                              {TaskKind::PG, local->descriptor()}};
    auto resolve = [&](TaskKind) -> NliBackend& { return *local; };

    auto t0 = chrono::steady_clock::now();
    const auto serial_verdicts = detect_all(samples, resolve, config, {1, true});
    const double serial_ms = ms_since(t0);

    t0 = chrono::steady_clock::now();
    const auto parallel_verdicts = detect_all(samples, resolve, config, {jobs, true});
    const double parallel_ms = ms_since(t0);

    bool equal = serial_verdicts.size() == parallel_verdicts.size();
    for (std::size_t i = 0; equal && i < serial_verdicts.size(); ++i)
        equal = serial_verdicts[i].score == parallel_verdicts[i].score;

    std::cout << "detect_all " << n_samples << " PG samples (local backend): jobs=1 " << serial_ms
              << " ms, jobs=" << jobs << " " << parallel_ms << " ms, speedup "
              << serial_ms / parallel_ms << (equal ? "" : "  VERDICT MISMATCH") << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    const bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;

    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    std::cout << "threads=" << threads << "\n";

    bench_matmul(quick ? 96 : 512, quick ? 3 : 10);
    if (!quick) bench_matmul(1024, 3);

    const auto model_dir = std::filesystem::temp_directory_path() / "entailguard-bench-model";
    DemoModelSpec spec;
    if (!quick) {
        spec.hidden = 64;
        spec.layers = 4;
        spec.heads = 4;
        spec.intermediate = 128;
        spec.max_positions = 64;
    }
    write_demo_model(model_dir, spec);
    bench_detect(model_dir, quick ? 8 : 64, std::max(threads, 2));

    std::filesystem::remove_all(model_dir);
    return 0;
}
