#pragma once

// Executable checks of the covering, halving, collapse, tooth-image and
// continuity identities, plus a sampling cross-check of the segment arithmetic.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sharkteeth/maps.hpp"

namespace shark {

struct CheckReport {
  std::string name;
  nlohmann::json params = nlohmann::json::object();
  bool pass = true;
  std::optional<nlohmann::json> witness;  // set on failure
  std::uint64_t seed = 0;
  std::vector<std::string> notes;         // informational findings that are not failures

  nlohmann::json to_json() const;
  std::string to_json_line() const { return to_json().dump(); }
};

/// Union of all ten images of truncate_M(d) against truncate_M(target_depth)
/// (default d + 1).
CheckReport check_cover(const Space& space, std::size_t d, std::optional<std::size_t> target_depth = {});

/// G/H: random single segments and random same-family words of length 1..max_len.
/// F: every f-word of length 1..max_len applied to truncate_M(depth).
CheckReport check_halving(const Space& space, Family family, std::size_t trials, std::size_t max_len,
                          std::uint64_t seed, std::size_t depth = 1);

/// Every length-2 word with a forbidden adjacency maps truncate_M(d) to one point.
CheckReport check_collapse(const Space& space, std::size_t d);

/// f1 and f2 on each tooth of generation i against the corresponding block of generation i+1.
CheckReport check_tooth_image(const Space& space, std::size_t i);

/// Every branch value agrees at every breakpoint on the bone and the rows of generations 0..max_gen.
CheckReport check_continuity(const Space& space, std::size_t max_gen);

/// Images of the parameters p/q (q <= denom_bound) of every segment of truncate_M(d) lie in
/// the exact image, and every image point lies near a sampled one.
CheckReport sampling_oracle(const Space& space, const Word& w, std::size_t d, std::size_t denom_bound);

/// All p/q in [0,1] with 1 <= q <= n, increasing.
std::vector<Rational> farey(std::size_t n);

}  // namespace shark
