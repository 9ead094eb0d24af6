// Copyright 2026 The coronaner Authors.
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

#ifndef CORONANER_SRC_FILE_UTIL_H_
#define CORONANER_SRC_FILE_UTIL_H_

#include <fstream>
#include <string>

#include "coronaner/error.h"

namespace coronaner::internal {

inline std::ifstream OpenForRead(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path + " for reading");
  return in;
}

inline std::ofstream OpenForWrite(const std::string &path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path + " for writing");
  return out;
}

inline void CheckWritten(std::ofstream &out, const std::string &path) {
  out.flush();
  if (!out) throw Error("write to " + path + " failed");
}

}  // namespace coronaner::internal

#endif  // CORONANER_SRC_FILE_UTIL_H_
