#pragma once

// Shared fixture for pipeline tests: a per-process scratch directory holding
// small icosahedral pseudogroup files (L = 8, 12, 16) and a config wired to
// them. Built lazily, once.

#include <filesystem>
#include <random>
#include <string>

#include "weavehash/groups.hpp"
#include "weavehash/hash.hpp"
#include "weavehash/pseudogroup.hpp"

namespace testsupport {

inline const std::string& pseudogroup_dir() {
  static const std::string dir = [] {
    namespace fs = std::filesystem;
    const fs::path d = fs::temp_directory_path() /
                       ("weavehash-fixture-" +
                        std::to_string(std::random_device{}()));
    fs::create_directories(d);
    const weavehash::FiniteGroup group = weavehash::FiniteGroup::icosahedral();
    for (int L : {8, 12, 16}) {
      const weavehash::Pseudogroup pg = weavehash::build_pseudogroup(
          group, L, weavehash::BuildMode::exhaustive);
      pg.save((d / ("icosahedral-L" + std::to_string(L) + ".pg")).string());
    }
    return d.string();
  }();
  return dir;
}

inline weavehash::HashConfig small_config() {
  weavehash::HashConfig cfg;
  cfg.group = "icosahedral";
  cfg.L0 = 8;
  cfg.m = 3;
  cfg.n = 3;
  cfg.iterations = {12, 16};
  cfg.tail_delta = 4;
  cfg.tail_thresholds = {0.0, 0.0};
  cfg.pseudogroup_dir = pseudogroup_dir();
  return cfg;
}

}  // namespace testsupport
