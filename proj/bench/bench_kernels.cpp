// Serial reference vs OpenMP kernels.
#include <benchmark/benchmark.h>

#include <cmath>

#include "bbtspec/charfun.hpp"
#include "bbtspec/gamma.hpp"
#include "bbtspec/grid.hpp"
#include "bbtspec/spectra.hpp"
#include "bbtspec/symbol.hpp"

namespace {

using namespace bbt;

const CharFunction& b1() {
    static const CharFunction f = [] {
        std::map<int, Block> b;
        b[-1] = {Scalar(-2), Scalar(0), Scalar(-4), Scalar(1)};
        b[0] = {Scalar(8), Scalar(-5), Scalar(-2), Scalar(5)};
        b[1] = {Scalar(0), Scalar(-6), Scalar(0), Scalar(0)};
        return char_function(MatrixSymbol(2, b));
    }();
    return f;
}

Exec mode(const benchmark::State& s) { return s.range(1) ? Exec::Parallel : Exec::Serial; }

void BM_SignField(benchmark::State& s) {
    for (auto _ : s) {
        auto sf = sign_field(b1(), {-3, 3, -3, 3}, static_cast<int>(s.range(0)), mode(s));
        benchmark::DoNotOptimize(sf.values.data());
    }
}

void BM_SampleLambda0(benchmark::State& s) {
    Lambda0Options opt;
    opt.exec = mode(s);
    for (auto _ : s) {
        auto sample = sample_lambda0(b1(), {-10, 25, -5, 5}, static_cast<int>(s.range(0)), opt);
        benchmark::DoNotOptimize(sample.points.data());
    }
}

void BM_GridMap(benchmark::State& s) {
    const Grid g = Grid::cells({-2, 2, -2, 2}, static_cast<int>(s.range(0)));
    const auto fn = [](cplx z) { return std::abs(std::exp(z) - z * z); };
    for (auto _ : s) {
        auto v = grid_map(g, fn, mode(s));
        benchmark::DoNotOptimize(v.data());
    }
}

}  // namespace

BENCHMARK(BM_SignField)->ArgsProduct({{128, 256}, {0, 1}})->ArgNames({"res", "parallel"})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleLambda0)->ArgsProduct({{256, 512}, {0, 1}})->ArgNames({"res", "parallel"})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GridMap)->ArgsProduct({{256, 1024}, {0, 1}})->ArgNames({"res", "parallel"})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
