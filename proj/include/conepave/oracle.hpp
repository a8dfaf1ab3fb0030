#pragma once

#include "conepave/transport.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace conepave {

/// Deterministic generation parameters: the same spec always produces
/// the same instance, bit for bit, on every platform.
struct GenSpec {
  uint64_t seed = 0;
  size_t n = 1;       // initial source atom count
  size_t d = 1;       // coordinate dimension
  ConeKind cone = ConeKind::Martingale;
  size_t splits = 0;  // spread depth; 0 keeps mu = nu
};

/// splitmix64: fixed portable 64-bit stream used for all generation.
struct SplitMix64 {
  uint64_t state;
  explicit SplitMix64(uint64_t seed) : state(seed) {}
  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  uint64_t below(uint64_t bound) { return next() % bound; }
};

struct Generated {
  Instance instance;
  TransportPlan plan;  // the construction kernel, always feasible
};

/// Ordered instance by construction: mu on random rational atoms, nu
/// built by composing exact generator-respecting spreads.
Generated gen_ordered(const GenSpec& spec);

/// Unordered instance: a gen_ordered output whose nu leaks mass to a
/// fresh point past the reach of a one-signed generator row.
Instance gen_unordered(const GenSpec& spec);

/// All vertices of the transport polytope, enumerated from an
/// independently derived equality/inequality system (n <= 4 only).
std::vector<TransportPlan> brute_vertices(const Instance& inst);

struct PropertyReport {
  struct Entry {
    std::string property;
    size_t checked = 0;
    size_t failed = 0;
    std::vector<std::string> failing_instances;  // serialized for replay
  };
  std::vector<Entry> entries;
  bool all_passed() const;
  std::string to_text() const;
};

/// Cross-module invariant run over `count` generated instances.
PropertyReport property_suite(uint64_t seed, size_t count);

}  // namespace conepave
