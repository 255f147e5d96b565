// Truss structure of the dolphin social network: counts per level, the
// summit trusses, and the strong split at level 3.
#include <algorithm>
#include <iostream>
#include <string>

#include "cohesion/cohesion.hpp"

int main(int argc, char** argv) {
  std::string path = argc > 1 ? argv[1] : "data/dolphins.tsv";
  cohesion::Graph g = cohesion::load_edge_list_file(path);
  cohesion::KClassDecomposition d = cohesion::k_classes(g);
  std::cout << "vertices " << g.vertex_count() << ", edges " << g.edge_count() << ", k_max " << d.k_max << '\n';

  for (std::uint32_t k = 3; k <= d.k_max; ++k) {
    auto trusses = cohesion::trusses_at(g, d, k);
    std::cout << k << "-trusses: " << trusses.members.size() << '\n';
    for (const auto& member : trusses.members) {
      std::cout << "  ";
      std::cout << member.size() << " edges:";
      std::vector<std::string> names;
      for (cohesion::EdgeId e : member) {
        names.push_back(g.label(g.edge(e).lo));
        names.push_back(g.label(g.edge(e).hi));
      }
      std::sort(names.begin(), names.end());
      names.erase(std::unique(names.begin(), names.end()), names.end());
      for (const auto& n : names) std::cout << ' ' << n;
      std::cout << '\n';
    }
  }

  std::cout << "summit trusses:\n";
  for (const auto& c : cohesion::summit_trusses(d, g)) std::cout << "  k=" << c.level << ", " << c.edges.size() << " edges\n";

  auto strong = cohesion::strong_trusses_at(cohesion::strong_truss_family(g, d), 3);
  std::cout << "strong 3-trusses: " << strong.size() << '\n';
}
