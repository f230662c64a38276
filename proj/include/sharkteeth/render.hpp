#pragma once

// Deterministic SVG output for subsets of M.
//
// Unit coordinates: x = t, y' = 1/2 - y so the bone is the bottom edge. One
// polyline per segment; a full row of a generation with 2^n teeth has 2^{n+1}+1
// vertices, the bone 2. Coordinates are written with 9 decimals.

#include <optional>
#include <string>
#include <vector>

#include "sharkteeth/subset.hpp"

namespace shark {

struct Layer {
  MSubset subset;
  std::string cls;                  // empty: "bone" / "row" per segment; otherwise e.g. "overlay"
  std::optional<std::size_t> piece; // tag element ids with a piece index
  std::string role;                 // optional id suffix ("source", "image")
};

struct RenderSpec {
  std::vector<Layer> layers;
  std::string title = "M";
  int width_px = 1000;
  std::size_t max_segments = 200'000;
};

std::string render(const Space& space, const RenderSpec& spec);

/// Bone plus all rows of generations 0..depth.
RenderSpec figure_truncation(const Space& space, std::size_t depth);

/// One tooth j on row `row` of generation i (default: its first row), split into its
/// pieces, each drawn next to its f1 image.
RenderSpec figure_tooth(const Space& space, std::size_t i, const BigInt& j, std::optional<BigInt> row = {});

}  // namespace shark
