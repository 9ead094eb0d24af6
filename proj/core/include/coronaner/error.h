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

#ifndef CORONANER_ERROR_H_
#define CORONANER_ERROR_H_

#include <stdexcept>
#include <string>

namespace coronaner {

// Base class for all errors raised by the library. Runtime failures map to
// exit code 1 in the command-line tool.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string &message) : std::runtime_error(message) {}
};

// Bad configuration, missing input paths or misaligned inputs. Exit code 2.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string &message) : Error(message) {}
};

// A file did not conform to its format. Carries the offending path and
// 1-based line number when known (0 otherwise).
class FormatError : public Error {
 public:
  FormatError(const std::string &path, int line, const std::string &message)
      : Error(Describe(path, line, message)),
        path_(path),
        line_(line),
        detail_(message) {}

  const std::string &path() const { return path_; }
  int line() const { return line_; }
  const std::string &detail() const { return detail_; }

 private:
  static std::string Describe(const std::string &path, int line,
                              const std::string &message) {
    std::string out = path.empty() ? "<input>" : path;
    if (line > 0) out += ":" + std::to_string(line);
    return out + ": " + message;
  }

  std::string path_;
  int line_;
  std::string detail_;
};

// Knowledge-base request failed (network, timeout, HTTP status).
class FetchError : public Error {
 public:
  FetchError(const std::string &endpoint, const std::string &key,
             const std::string &reason)
      : Error("fetch from " + endpoint + " failed for " + key + ": " + reason),
        endpoint_(endpoint),
        key_(key) {}

  const std::string &endpoint() const { return endpoint_; }
  // Entity type (seed fetch) or lookup label (refinement) being fetched.
  const std::string &key() const { return key_; }

 private:
  std::string endpoint_;
  std::string key_;
};

}  // namespace coronaner

#endif  // CORONANER_ERROR_H_
