// Copyright 2026 The Infolab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef INFOLAB_MODEL_IO_H_
#define INFOLAB_MODEL_IO_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "infolab/game.h"
#include "infolab/measure.h"

namespace infolab {

// An information structure read from a model file. Files that declare a
// prior and channels keep them; files that give the joint directly leave
// both empty.
struct Model {
  JointMeasure joint;
  std::optional<Measure> prior;
  std::vector<Channel> channels;
};

// Model and game files are JSON; the grammar is described in README.md.
// Errors throw ParseError whose location names the source and the JSON
// pointer of the offending value.
Model ParseModel(std::string_view text, const std::string& source = "model");
Model LoadModel(const std::string& path);

// `states` is the state space of the model the game is played on.
Game ParseGame(std::string_view text, const SpacePtr& states,
               const std::string& source = "game");
Game LoadGame(const std::string& path, const SpacePtr& states);

// Measurement channel of `player` in `model`: the declared channel when
// present, otherwise the conditional of the joint (zero-mass states map to
// the first point).
Channel PlayerChannel(const Model& model, int player);

}  // namespace infolab

#endif  // INFOLAB_MODEL_IO_H_
