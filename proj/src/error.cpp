// Copyright 2026 The SoundPlot Authors. All Rights Reserved.
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

#include "soundplot/error.hpp"

namespace soundplot {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kFileNotFound: return "FileNotFound";
    case ErrorKind::kUnsupportedFormat: return "UnsupportedFormat";
    case ErrorKind::kCorruptHeader: return "CorruptHeader";
    case ErrorKind::kEmptyAudio: return "EmptyAudio";
    case ErrorKind::kAllSilent: return "AllSilent";
    case ErrorKind::kAudioTooShort: return "AudioTooShort";
    case ErrorKind::kInvalidConfig: return "InvalidConfig";
    case ErrorKind::kNonColaConfig: return "NonColaConfig";
    case ErrorKind::kInvalidRange: return "InvalidRange";
    case ErrorKind::kShapeMismatch: return "ShapeMismatch";
    case ErrorKind::kEmptySignal: return "EmptySignal";
    case ErrorKind::kEmptyEmbedding: return "EmptyEmbedding";
    case ErrorKind::kIoError: return "IoError";
    case ErrorKind::kCollisionError: return "CollisionError";
  }
  return "Unknown";
}

}  // namespace soundplot
