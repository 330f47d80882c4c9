// Times the serial reference kernels against their OpenMP versions and
// checks that every result agrees bitwise.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <vector>

#include "CLI11.hpp"
#include "weavehash/kernels.hpp"
#include "weavehash/rng.hpp"

using namespace weavehash;

namespace {

template <typename Fn>
double best_of(int repeat, Fn&& fn) {
  double best = 1e300;
  for (int r = 0; r < repeat; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void row(const char* name, std::size_t n, double ser_ms, double par_ms, bool agree) {
  std::printf("%-12s %10zu %12.2f %12.2f %8.2fx  %s\n", name, n, ser_ms, par_ms,
              ser_ms / par_ms, agree ? "agree" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Serial reference kernels vs OpenMP"};
  int points = 200000;
  int targets = 64;
  int max_len = 20;
  int repeat = 3;
  std::uint64_t seed = 1;
  app.add_option("--points", points, "cloud size for best_match / nn_spacings");
  app.add_option("--targets", targets, "number of scan targets");
  app.add_option("--L", max_len, "weave depth for best_weaves");
  app.add_option("--repeat", repeat, "repetitions, best time kept");
  app.add_option("--seed", seed, "rng seed");
  CLI11_PARSE(app, argc, argv);

  Rng rng(seed);
  std::vector<Quat> cloud(points);
  for (auto& q : cloud) q = haar_quat(rng);
  std::vector<Quat> tgts(targets);
  for (auto& q : tgts) q = haar_quat(rng);

  std::printf("%-12s %10s %12s %12s %9s\n", "kernel", "n", "serial_ms", "parallel_ms",
              "speedup");
  int mismatches = 0;

  {
    std::vector<ScanBest> ser(tgts.size()), par(tgts.size());
    const double st = best_of(repeat, [&] {
      for (std::size_t t = 0; t < tgts.size(); ++t) ser[t] = best_match_serial(cloud, tgts[t]);
    });
    const double pt = best_of(repeat, [&] {
      for (std::size_t t = 0; t < tgts.size(); ++t) par[t] = best_match_parallel(cloud, tgts[t]);
    });
    bool ok = true;
    for (std::size_t t = 0; t < tgts.size(); ++t) {
      ok = ok && ser[t].absdot == par[t].absdot && ser[t].index == par[t].index;
    }
    mismatches += !ok;
    row("best_match", cloud.size() * tgts.size(), st, pt, ok);
  }

  {
    std::vector<WeaveBest> ser(tgts.size()), par(tgts.size());
    const auto reseed = [&](std::vector<WeaveBest>& best) {
      for (std::size_t t = 0; t < tgts.size(); ++t) {
        best[t] = WeaveBest{std::fabs(tgts[t].w), pack_word({}), 0, 0};
      }
    };
    const double st = best_of(repeat, [&] {
      reseed(ser);
      best_weaves_serial(max_len, tgts, ser);
    });
    const double pt = best_of(repeat, [&] {
      reseed(par);
      best_weaves_parallel(max_len, tgts, par);
    });
    bool ok = true;
    for (std::size_t t = 0; t < tgts.size(); ++t) {
      ok = ok && ser[t].absdot == par[t].absdot && ser[t].packed == par[t].packed;
    }
    mismatches += !ok;
    row("best_weaves", count_weaves_upto(max_len) * tgts.size(), st, pt, ok);
  }

  {
    std::vector<double> ser, par;
    const double st = best_of(repeat, [&] { ser = nn_spacings_serial(cloud); });
    const double pt = best_of(repeat, [&] { par = nn_spacings_parallel(cloud); });
    const bool ok = ser == par;
    mismatches += !ok;
    row("nn_spacings", cloud.size(), st, pt, ok);
  }

  return mismatches;
}
