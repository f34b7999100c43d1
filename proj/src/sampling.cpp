#include "dualcube/sampling.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "dualcube/errors.hpp"

namespace dualcube {

namespace {

constexpr std::array<std::string_view, 17> kNames = {
    "uniform",         "one-cluster",      "triple+same",     "triple+cross",     "triple+out-cluster",
    "triple+out",      "triple+far-out",   "triple+far-vertex", "pairs-same",     "pairs-aligned",
    "pairs-cross",     "pair+singles",     "pair+mixed",      "pair+opposite",    "adjacent-pair+outs",
    "four-clusters",   "adjacent-pair+aligned-outs",
};

}  // namespace

TerminalSampler::TerminalSampler(const DualCube& d, std::uint64_t seed) : d_(d), rng_(seed) {
  if (d.order() < 3) throw InvalidArgument("terminal sampling needs n >= 3");
}

int TerminalSampler::generator_count() { return static_cast<int>(kNames.size()); }
std::string_view TerminalSampler::generator_name(int g) { return kNames.at(static_cast<std::size_t>(g)); }

std::size_t TerminalSampler::below(std::size_t bound) {
  return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng_);
}

Vertex TerminalSampler::any_vertex() { return static_cast<Vertex>(below(d_.vertex_count())); }

ClusterRef TerminalSampler::any_cluster(int class_bit) {
  return ClusterRef{class_bit, static_cast<Vertex>(below(d_.clusters_per_class()))};
}

ClusterRef TerminalSampler::other_cluster(ClusterRef not_this, int class_bit) {
  while (true) {
    ClusterRef c = any_cluster(class_bit);
    if (c != not_this) return c;
  }
}

Vertex TerminalSampler::in_cluster(ClusterRef c) {
  return d_.cluster_member(c, static_cast<Vertex>(below(d_.clusters_per_class())));
}

std::vector<Vertex> TerminalSampler::distinct_in(ClusterRef c, std::size_t count) {
  std::set<Vertex> s;
  while (s.size() < count) s.insert(in_cluster(c));
  std::vector<Vertex> out(s.begin(), s.end());
  std::shuffle(out.begin(), out.end(), rng_);
  return out;
}

std::vector<Vertex> TerminalSampler::draw4(int g) {
  const int c0 = static_cast<int>(below(2));
  std::vector<Vertex> s;
  auto out = [&](Vertex v) { return d_.outside_neighbor(v); };
  switch (g) {
    case 0: {
      std::set<Vertex> u;
      while (u.size() < 4) u.insert(any_vertex());
      s.assign(u.begin(), u.end());
      break;
    }
    case 1:
      s = distinct_in(any_cluster(c0), 4);
      break;
    case 2: {
      ClusterRef a = any_cluster(c0);
      s = distinct_in(a, 3);
      s.push_back(in_cluster(other_cluster(a, c0)));
      break;
    }
    case 3:
      s = distinct_in(any_cluster(c0), 3);
      s.push_back(in_cluster(any_cluster(1 - c0)));
      break;
    case 4: {  // fourth terminal in the outside cluster of a triple member
      s = distinct_in(any_cluster(c0), 3);
      s.push_back(in_cluster(d_.outside_cluster(s[below(3)])));
      break;
    }
    case 5:  // fourth terminal is the outside neighbour of a triple member
      s = distinct_in(any_cluster(c0), 3);
      s.push_back(out(s[below(3)]));
      break;
    case 6:    // fourth terminal is the outside neighbour of a non-terminal
    case 7: {  // ... or anywhere in that vertex's outside cluster
      ClusterRef a = any_cluster(c0);
      auto four = distinct_in(a, 4);
      s.assign(four.begin(), four.begin() + 3);
      s.push_back(g == 6 ? out(four[3]) : in_cluster(d_.outside_cluster(four[3])));
      break;
    }
    case 8: {
      ClusterRef a = any_cluster(c0);
      s = distinct_in(a, 2);
      auto t = distinct_in(other_cluster(a, c0), 2);
      s.insert(s.end(), t.begin(), t.end());
      break;
    }
    case 9: {  // same relative positions in two same-class clusters
      ClusterRef a = any_cluster(c0);
      ClusterRef b = other_cluster(a, c0);
      s = distinct_in(a, 2);
      s.push_back(d_.cluster_member(b, d_.free_bits(s[0])));
      s.push_back(below(2) ? d_.cluster_member(b, d_.free_bits(s[1])) : in_cluster(b));
      break;
    }
    case 10: {
      s = distinct_in(any_cluster(c0), 2);
      auto t = distinct_in(any_cluster(1 - c0), 2);
      s.insert(s.end(), t.begin(), t.end());
      break;
    }
    case 11: {
      ClusterRef a = any_cluster(c0);
      ClusterRef b = other_cluster(a, c0);
      ClusterRef c = any_cluster(c0);
      while (c == a || c == b) c = any_cluster(c0);
      s = distinct_in(a, 2);
      s.push_back(in_cluster(b));
      s.push_back(in_cluster(c));
      break;
    }
    case 12: {
      ClusterRef a = any_cluster(c0);
      s = distinct_in(a, 2);
      s.push_back(in_cluster(other_cluster(a, c0)));
      s.push_back(in_cluster(any_cluster(1 - c0)));
      break;
    }
    case 13: {
      ClusterRef b = any_cluster(1 - c0);
      s = distinct_in(any_cluster(c0), 2);
      s.push_back(in_cluster(b));
      s.push_back(in_cluster(other_cluster(b, 1 - c0)));
      break;
    }
    case 14:    // adjacent pair whose outside clusters hold the singles
    case 16: {  // ... with the singles at equal relative positions
      ClusterRef a = any_cluster(c0);
      Vertex x = in_cluster(a);
      auto nb = d_.neighbors(x);
      std::vector<Vertex> inside;
      for (Vertex v : nb) {
        if (d_.cluster_of(v) == a) inside.push_back(v);
      }
      Vertex y = inside[below(inside.size())];
      Vertex z = in_cluster(d_.outside_cluster(x));
      Vertex w = g == 14 ? in_cluster(d_.outside_cluster(y)) : d_.cluster_member(d_.outside_cluster(y), d_.free_bits(z));
      s = {x, y, z, w};
      break;
    }
    case 15: {
      int ones = static_cast<int>(below(5));
      std::set<ClusterRef> used;
      for (int i = 0; i < 4; ++i) {
        int cls = i < ones ? 1 : 0;
        ClusterRef c = any_cluster(cls);
        while (used.count(c)) c = any_cluster(cls);
        used.insert(c);
        s.push_back(in_cluster(c));
      }
      break;
    }
    default:
      throw InvalidArgument("unknown sampler generator " + std::to_string(g));
  }
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) return draw4(0);
  return s;
}

std::vector<Vertex> TerminalSampler::draw3(int g) {
  auto s = draw4(g);
  s.erase(s.begin() + static_cast<std::ptrdiff_t>(below(4)));
  return s;
}

std::vector<std::vector<Vertex>> stratified_sample(const DualCube& d, int size, int count, std::uint64_t seed) {
  if (size != 3 && size != 4) throw InvalidArgument("stratified_sample: size must be 3 or 4");
  TerminalSampler sampler(d, seed);
  std::set<std::vector<Vertex>> seen;
  std::vector<std::vector<Vertex>> out;
  const int gens = TerminalSampler::generator_count();
  int misses = 0;
  for (int i = 0; static_cast<int>(out.size()) < count; ++i) {
    auto s = size == 4 ? sampler.draw4(i % gens) : sampler.draw3(i % gens);
    if (seen.insert(s).second) {
      out.push_back(std::move(s));
    } else if (++misses > 100 * count + 1000) {
      break;  // the space is smaller than requested
    }
  }
  return out;
}

}  // namespace dualcube
