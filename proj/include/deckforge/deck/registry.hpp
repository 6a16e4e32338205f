// Copyright 2026 The Deckforge Authors
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

#pragma once

#include <algorithm>
#include <array>
#include <string_view>

namespace deckforge {

// Supported SDE command heads.
namespace cmd {
inline constexpr std::string_view kSetUpDirection = "sde:set-up-direction";
inline constexpr std::string_view kSetDefaultBoolean = "sdegeo:set-default-boolean";
inline constexpr std::string_view kCreateRectangle = "sdegeo:create-rectangle";
inline constexpr std::string_view kCreateCuboid = "sdegeo:create-cuboid";
inline constexpr std::string_view kDefineContactSet = "sdegeo:define-contact-set";
inline constexpr std::string_view kSetContact = "sdegeo:set-contact";
inline constexpr std::string_view kRefevalWindow = "sdedr:define-refeval-window";
inline constexpr std::string_view kConstantProfile = "sdedr:define-constant-profile";
inline constexpr std::string_view kConstantPlacement = "sdedr:define-constant-profile-placement";
inline constexpr std::string_view kGaussianProfile = "sdedr:define-gaussian-profile";
inline constexpr std::string_view kAnalyticalPlacement = "sdedr:define-analytical-profile-placement";
inline constexpr std::string_view kRefinementSize = "sdedr:define-refinement-size";
inline constexpr std::string_view kRefinementPlacement = "sdedr:define-refinement-placement";
inline constexpr std::string_view kBuildMesh = "sde:build-mesh";
inline constexpr std::string_view kSaveTdrBnd = "sdeio:save-tdr-bnd";
}  // namespace cmd

inline constexpr std::array<std::string_view, 15> kKnownCommands = {
    cmd::kSetUpDirection,     cmd::kSetDefaultBoolean,   cmd::kCreateRectangle,   cmd::kCreateCuboid,
    cmd::kDefineContactSet,   cmd::kSetContact,          cmd::kRefevalWindow,     cmd::kConstantProfile,
    cmd::kConstantPlacement,  cmd::kGaussianProfile,     cmd::kAnalyticalPlacement, cmd::kRefinementSize,
    cmd::kRefinementPlacement, cmd::kBuildMesh,          cmd::kSaveTdrBnd,
};

inline bool is_known_command(std::string_view head) {
  return std::find(kKnownCommands.begin(), kKnownCommands.end(), head) != kKnownCommands.end();
}

}  // namespace deckforge
