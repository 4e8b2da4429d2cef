// Copyright 2026 The npg-games Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NPG_GAME_IO_H_
#define NPG_GAME_IO_H_

// Self-describing text format for generated games.
//
//   npg-game 1
//   kind random_static            generator metadata
//   seed 7
//   agents 3
//   action_sizes 3 4 5
//   reward_range 0 1
//   structure dense               dense | polymatrix | markov
//   ...structure block...
//   end
//
// Structure blocks:
//   dense       "rewards <agent>" followed by the row-major tensor values
//   polymatrix  "edge_half_width <w>", "edge_scale <s>", "edges <count>",
//               then per edge "edge <row> <col>" and its row-major payoff
//   markov      "states <S>", "gamma <g>", "initial_dist <S values>",
//               "rewards <agent> <state>" + tensor for every pair, then
//               "kernel <state>" + values P(s'|s,a) ordered (a, s')
//
// Values are written one per line with shortest round-trip formatting, so
// reading a file back reproduces the game bit for bit.

#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "npg/errors.h"
#include "npg/format.h"
#include "npg/game.h"
#include "npg/generators.h"
#include "npg/markov.h"

namespace npg {

inline constexpr int kGameFileVersion = 1;

struct GameFile {
  GameSpec spec;
  std::optional<StaticGame> static_game;
  std::optional<MarkovGame> markov_game;
};

// Builds the game a spec describes.
inline GameFile GenerateGame(const GameSpec& spec) {
  GameFile file;
  file.spec = spec;
  switch (spec.kind) {
    case GameKind::kRandomStatic:
      file.static_game = RandomGame(spec);
      break;
    case GameKind::kPolymatrixZeroSum:
      file.static_game = PolymatrixNetwork(spec);
      if (file.spec.edges.empty()) file.spec.edges = spec.EffectiveEdges();
      break;
    case GameKind::kRandomMarkov:
      file.markov_game = RandomMarkovGame(spec);
      break;
  }
  return file;
}

namespace game_io_internal {

inline void WriteValues(std::ostream& out, const Vec& values) {
  for (double x : values) out << FormatDouble(x) << '\n';
}

inline void WriteSizes(std::ostream& out, const std::vector<int>& sizes) {
  out << "action_sizes";
  for (int m : sizes) out << ' ' << m;
  out << '\n';
}

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  std::string Token() {
    std::string t;
    if (!(in_ >> t)) throw ParameterError("unexpected end of game file");
    return t;
  }
  void Expect(const std::string& keyword) {
    const std::string t = Token();
    if (t != keyword) {
      throw ParameterError("game file: expected '" + keyword + "', got '" +
                           t + "'");
    }
  }
  double Double() { return ParseDouble(Token()); }
  int Int() { return ParseInt(Token()); }
  std::uint64_t U64() { return ParseU64(Token()); }
  Vec Values(std::size_t count) {
    Vec v(count);
    for (double& x : v) x = Double();
    return v;
  }

 private:
  std::istream& in_;
};

}  // namespace game_io_internal

inline void WriteGame(std::ostream& out, const GameFile& file) {
  using game_io_internal::WriteSizes;
  using game_io_internal::WriteValues;
  out << "npg-game " << kGameFileVersion << '\n';
  out << "kind " << GameKindName(file.spec.kind) << '\n';
  out << "seed " << file.spec.seed << '\n';
  if (file.static_game) {
    const StaticGame& g = *file.static_game;
    out << "agents " << g.num_agents() << '\n';
    WriteSizes(out, g.action_sizes());
    out << "reward_range " << FormatDouble(g.reward_range().lo) << ' '
        << FormatDouble(g.reward_range().hi) << '\n';
    if (g.is_polymatrix()) {
      out << "structure polymatrix\n";
      out << "edge_half_width " << FormatDouble(file.spec.edge_half_width)
          << '\n';
      out << "edge_scale " << FormatDouble(g.edge_scale()) << '\n';
      out << "edges " << g.edges().size() << '\n';
      for (const PolymatrixEdge& e : g.edges()) {
        out << "edge " << e.row << ' ' << e.col << '\n';
        WriteValues(out, e.payoff);
      }
    } else {
      out << "structure dense\n";
      for (int i = 0; i < g.num_agents(); ++i) {
        out << "rewards " << i << '\n';
        WriteValues(out, g.dense_rewards()[i]);
      }
    }
  } else if (file.markov_game) {
    const MarkovGame& g = *file.markov_game;
    out << "agents " << g.num_agents() << '\n';
    WriteSizes(out, g.action_sizes());
    out << "reward_range " << FormatDouble(g.reward_range().lo) << ' '
        << FormatDouble(g.reward_range().hi) << '\n';
    out << "structure markov\n";
    out << "states " << g.num_states() << '\n';
    out << "gamma " << FormatDouble(g.gamma()) << '\n';
    out << "initial_dist";
    for (double p : g.initial_dist()) out << ' ' << FormatDouble(p);
    out << '\n';
    for (int i = 0; i < g.num_agents(); ++i) {
      for (int s = 0; s < g.num_states(); ++s) {
        out << "rewards " << i << ' ' << s << '\n';
        WriteValues(out, g.rewards()[i][s]);
      }
    }
    for (int s = 0; s < g.num_states(); ++s) {
      out << "kernel " << s << '\n';
      WriteValues(out, g.kernel()[s]);
    }
  } else {
    throw ParameterError("game file holds no game");
  }
  out << "end\n";
}

inline GameFile ReadGame(std::istream& in) {
  game_io_internal::Reader r(in);
  r.Expect("npg-game");
  if (r.Int() != kGameFileVersion) {
    throw ParameterError("unsupported game file version");
  }
  GameFile file;
  r.Expect("kind");
  file.spec.kind = ParseGameKind(r.Token());
  r.Expect("seed");
  file.spec.seed = r.U64();
  r.Expect("agents");
  const int n = r.Int();
  if (n < 1) throw ParameterError("game file: agent count must be positive");
  r.Expect("action_sizes");
  for (int i = 0; i < n; ++i) file.spec.action_sizes.push_back(r.Int());
  const std::size_t joint = NumJointActions(file.spec.action_sizes);
  r.Expect("reward_range");
  RewardRange range;
  range.lo = r.Double();
  range.hi = r.Double();
  r.Expect("structure");
  const std::string structure = r.Token();
  if (structure == "dense") {
    std::vector<Vec> rewards;
    for (int i = 0; i < n; ++i) {
      r.Expect("rewards");
      if (r.Int() != i) throw ParameterError("game file: agent out of order");
      rewards.push_back(r.Values(joint));
    }
    file.static_game =
        StaticGame::Dense(file.spec.action_sizes, std::move(rewards), range);
  } else if (structure == "polymatrix") {
    r.Expect("edge_half_width");
    file.spec.edge_half_width = r.Double();
    r.Expect("edge_scale");
    const double scale = r.Double();
    r.Expect("edges");
    const int count = r.Int();
    std::vector<PolymatrixEdge> edges;
    for (int e = 0; e < count; ++e) {
      r.Expect("edge");
      PolymatrixEdge edge;
      edge.row = r.Int();
      edge.col = r.Int();
      if (edge.row < 0 || edge.row >= n || edge.col < 0 || edge.col >= n) {
        throw ParameterError("game file: edge references a missing agent");
      }
      edge.payoff = r.Values(static_cast<std::size_t>(
          file.spec.action_sizes[edge.row] * file.spec.action_sizes[edge.col]));
      file.spec.edges.emplace_back(edge.row, edge.col);
      edges.push_back(std::move(edge));
    }
    file.static_game = StaticGame::Polymatrix(
        file.spec.action_sizes, std::move(edges), scale, range);
  } else if (structure == "markov") {
    r.Expect("states");
    const int states = r.Int();
    if (states < 1) throw ParameterError("game file: state count");
    file.spec.num_states = states;
    r.Expect("gamma");
    file.spec.gamma = r.Double();
    r.Expect("initial_dist");
    Vec initial = r.Values(static_cast<std::size_t>(states));
    std::vector<std::vector<Vec>> rewards(n);
    for (int i = 0; i < n; ++i) {
      for (int s = 0; s < states; ++s) {
        r.Expect("rewards");
        if (r.Int() != i || r.Int() != s) {
          throw ParameterError("game file: reward block out of order");
        }
        rewards[i].push_back(r.Values(joint));
      }
    }
    std::vector<Vec> kernel;
    for (int s = 0; s < states; ++s) {
      r.Expect("kernel");
      if (r.Int() != s) throw ParameterError("game file: kernel out of order");
      kernel.push_back(r.Values(joint * static_cast<std::size_t>(states)));
    }
    file.markov_game =
        MarkovGame(states, file.spec.action_sizes, std::move(rewards),
                   std::move(kernel), file.spec.gamma, std::move(initial),
                   range);
  } else {
    throw ParameterError("game file: unknown structure '" + structure + "'");
  }
  r.Expect("end");
  return file;
}

inline void SaveGame(const std::string& path, const GameFile& file) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  WriteGame(out, file);
  if (!out) throw IoError("failed writing " + path);
}

inline GameFile LoadGame(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open game file " + path);
  return ReadGame(in);
}

}  // namespace npg

#endif  // NPG_GAME_IO_H_
