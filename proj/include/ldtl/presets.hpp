// Copyright 2026 LDTL Lab Contributors
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

#pragma once

// Built-in worlds.
//
// W2: two diseases, an informative lab test and a weak imaging test, with an
// uninformative initial observation. Small enough to check by hand.
//
// W4: four abdominal conditions and three test categories (physical exam,
// laboratory, imaging). Uniform priors; tables are hand-set so that each test
// category separates different disease pairs.
//
// W4 benchmark: the same four conditions with five tests (exam, lab, img, us,
// cbc) and 90% per-test availability, so a three-test horizon can not see
// everything. cbc is a weak, mostly redundant test.

#include <string>
#include <vector>

#include "ldtl/world.hpp"

namespace ldtl::presets {

inline WorldConfig w2() {
  WorldConfig c;
  c.disease_names = {"A", "B"};
  c.priors = {0.5, 0.5};
  c.init_alphabet = {"none"};
  c.init_obs_table = {{1.0}, {1.0}};
  c.actions = {
      {"lab", {"+", "-"}, {{0.9, 0.1}, {0.2, 0.8}}},
      {"img", {"+", "-"}, {{0.6, 0.4}, {0.5, 0.5}}},
  };
  return c;
}

inline WorldConfig w4(double availability = 1.0) {
  WorldConfig c;
  c.disease_names = {"appendicitis", "cholecystitis", "diverticulitis", "pancreatitis"};
  c.priors = {0.25, 0.25, 0.25, 0.25};
  c.init_alphabet = {"rlq_pain", "ruq_pain", "llq_pain", "epigastric_pain", "diffuse_pain"};
  c.init_obs_table = {
      {0.40, 0.05, 0.10, 0.05, 0.40},
      {0.05, 0.40, 0.05, 0.10, 0.40},
      {0.10, 0.05, 0.40, 0.05, 0.40},
      {0.05, 0.10, 0.05, 0.40, 0.40},
  };
  c.actions = {
      {"exam",
       {"mcburney", "murphy", "llq_tender", "epigastric_tender", "nonspecific"},
       {
           {0.45, 0.05, 0.10, 0.05, 0.35},
           {0.05, 0.45, 0.05, 0.10, 0.35},
           {0.10, 0.05, 0.45, 0.05, 0.35},
           {0.05, 0.10, 0.05, 0.45, 0.35},
       }},
      {"lab",
       {"lipase_high", "bilirubin_high", "wbc_high", "normal"},
       {
           {0.03, 0.05, 0.70, 0.22},
           {0.05, 0.60, 0.25, 0.10},
           {0.03, 0.05, 0.62, 0.30},
           {0.85, 0.07, 0.05, 0.03},
       }},
      {"img",
       {"appendix_inflamed", "gallbladder_inflamed", "diverticula_inflamed", "pancreas_inflamed", "inconclusive"},
       {
           {0.75, 0.02, 0.03, 0.02, 0.18},
           {0.02, 0.75, 0.02, 0.03, 0.18},
           {0.03, 0.02, 0.75, 0.02, 0.18},
           {0.02, 0.03, 0.02, 0.55, 0.38},
       }},
  };
  c.availability_prob = {availability, availability, availability};
  return c;
}

inline WorldConfig w4_benchmark() {
  WorldConfig c;
  c.disease_names = {"appendicitis", "cholecystitis", "diverticulitis", "pancreatitis"};
  c.priors = {0.25, 0.25, 0.25, 0.25};
  c.init_alphabet = {"rlq_pain", "ruq_pain", "llq_pain", "epigastric_pain", "diffuse_pain"};
  c.init_obs_table = {
      {0.683, 0.089, 0.089, 0.089, 0.050},
      {0.089, 0.683, 0.089, 0.089, 0.050},
      {0.089, 0.089, 0.683, 0.089, 0.050},
      {0.089, 0.089, 0.089, 0.683, 0.050},
  };
  c.actions = {
      {"exam",
       {"mcburney", "murphy", "llq_tender", "epigastric_tender", "nonspecific"},
       {
           {0.300, 0.055, 0.055, 0.055, 0.535},
           {0.055, 0.300, 0.055, 0.055, 0.535},
           {0.055, 0.055, 0.300, 0.055, 0.535},
           {0.055, 0.055, 0.055, 0.300, 0.535},
       }},
      {"lab",
       {"lipase_high", "bilirubin_high", "unremarkable"},
       {
           {0.020, 0.100, 0.880},
           {0.030, 0.250, 0.720},
           {0.020, 0.080, 0.900},
           {0.873, 0.080, 0.047},
       }},
      {"img",
       {"appendix_inflamed", "gallbladder_inflamed", "diverticula_inflamed", "pancreas_inflamed", "inconclusive"},
       {
           {0.873, 0.020, 0.030, 0.020, 0.057},
           {0.030, 0.250, 0.020, 0.030, 0.670},
           {0.030, 0.020, 0.873, 0.020, 0.057},
           {0.020, 0.030, 0.020, 0.250, 0.680},
       }},
      {"us",
       {"appendix_visualized", "gallbladder_wall_thick", "unremarkable"},
       {
           {0.250, 0.020, 0.730},
           {0.020, 0.873, 0.107},
           {0.030, 0.020, 0.950},
           {0.020, 0.100, 0.880},
       }},
      {"cbc",
       {"wbc_high", "wbc_normal"},
       {
           {0.650, 0.350},
           {0.600, 0.400},
           {0.625, 0.375},
           {0.500, 0.500},
       }},
  };
  c.availability_prob = {0.9, 0.9, 0.9, 0.9, 0.9};
  return c;
}

}  // namespace ldtl::presets
