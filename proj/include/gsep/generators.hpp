#pragma once

#include <cstdint>
#include <string>

#include "gsep/embedded_graph.hpp"

namespace gsep {

/// rows x cols grid in its standard planar embedding.
EmbeddedGraph gen_planar_grid(int rows, int cols);

/// rows x cols grid with wrap-around in both directions; genus 1.
/// Throws Error{TooSmall} unless rows, cols >= 3.
EmbeddedGraph gen_torus_grid(int rows, int cols);

/// Connected sum of `genus` patch x patch torus grids joined by 4-edge tubes.
EmbeddedGraph gen_genus_sum(int genus, int patch);

/// Triangulation of genus `genus` with `n` vertices: a fixed base
/// triangulation grown by inserting vertices into uniformly chosen faces.
EmbeddedGraph gen_random_triangulation(int genus, int n, std::uint64_t seed);

enum class Family { PlanarGrid, TorusGrid, GenusSum, RandomTriangulation };

/// Textual forms: "planar-grid:RxC", "torus-grid:RxC", "genus-sum:G:P",
/// "random-triangulation:G:N:SEED".
struct InstanceSpec {
  Family family = Family::TorusGrid;
  int a = 0;  // rows | genus
  int b = 0;  // cols | patch size | vertex count
  std::uint64_t seed = 0;

  std::string to_string() const;
  static InstanceSpec parse(const std::string& text);
};

const char* family_name(Family f);
EmbeddedGraph make_instance(const InstanceSpec& spec);

}  // namespace gsep
