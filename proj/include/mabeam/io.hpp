// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026-present mabeam contributors

#pragma once

#include <json.hpp>

#include "mabeam/harness.hpp"

namespace mabeam {

/// Scene <-> JSON. Angles in degrees, complex numbers as [re, im] pairs,
/// so recorded realizations are replayable from plain files.
nlohmann::json scene_to_json(const Scene& scene);
Scene scene_from_json(const nlohmann::json& j);

/// Config ingestion. Degrees / dB / wavelength-multiples at the
/// boundary; radians / linear watts / meters inside. Unknown keys are
/// rejected. Throws std::invalid_argument on any problem.
SystemConfig config_from_json(const nlohmann::json& j);

/// Full experiment description (embeds the config under "config").
ExperimentSpec experiment_from_json(const nlohmann::json& j);

SystemConfig load_config_file(const std::string& path);
ExperimentSpec load_experiment_file(const std::string& path);

Scene load_scene_file(const std::string& path);
void save_scene_file(const Scene& scene, const std::string& path);

} // namespace mabeam
