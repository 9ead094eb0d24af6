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

// Minimal SPARQL SELECT client with a persistent result cache.
//
// The cache is a JSONL file, one line per answered query:
//
//   {"endpoint": "...", "key": "...", "query_hash": "<sha256 hex>",
//    "rows": [<raw SPARQL JSON result bindings>]}
//
// A query is identified by (endpoint, key, query_hash). `key` is the entity
// type for seed fetches and the lookup label for refinement lookups. Later
// lines override earlier ones with the same identity.

#ifndef CORONANER_SPARQL_H_
#define CORONANER_SPARQL_H_

#include <atomic>
#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <tuple>
#include <vector>

namespace coronaner {

// One result row: variable name -> bound value (URIs and literals alike).
using SparqlRow = std::map<std::string, std::string>;

// Hex SHA-256 of the query text.
std::string QueryHash(const std::string &query);

// Extracts result rows from a SPARQL 1.1 JSON results document. Throws
// Error on malformed input.
std::vector<SparqlRow> ParseSparqlResults(const std::string &body);

// Last path segment of an entity URI ("http://.../entity/Q42" -> "Q42").
std::string ItemIdFromUri(const std::string &uri);

class SparqlTransport {
 public:
  virtual ~SparqlTransport() = default;

  // Runs a SELECT query and returns the raw response body. Throws Error
  // describing the failure (connection, timeout, HTTP status).
  virtual std::string Select(const std::string &endpoint,
                             const std::string &query,
                             std::chrono::milliseconds timeout) = 0;
};

// HTTP(S) transport: form-encoded POST with
// Accept: application/sparql-results+json.
class HttpSparqlTransport : public SparqlTransport {
 public:
  std::string Select(const std::string &endpoint, const std::string &query,
                     std::chrono::milliseconds timeout) override;
};

class SparqlCache {
 public:
  // Loads `path` if it exists. An empty path keeps the cache in memory.
  explicit SparqlCache(std::string path = {});

  SparqlCache(const SparqlCache &) = delete;
  SparqlCache &operator=(const SparqlCache &) = delete;

  std::optional<std::vector<SparqlRow>> Find(const std::string &endpoint,
                                             const std::string &key,
                                             const std::string &query) const;

  // Records the rows of a response body and appends them to the file.
  // Returns the parsed rows.
  std::vector<SparqlRow> Store(const std::string &endpoint,
                               const std::string &key,
                               const std::string &query,
                               const std::string &response_body);

  const std::string &path() const { return path_; }
  size_t size() const;

 private:
  using Key = std::tuple<std::string, std::string, std::string>;

  std::string path_;
  mutable std::shared_mutex mu_;
  std::map<Key, std::vector<SparqlRow>> entries_;
};

// Cache-first client. Without a transport the client is offline and a cache
// miss raises FetchError. Requests are issued one at a time.
class SparqlClient {
 public:
  SparqlClient(std::string endpoint, std::shared_ptr<SparqlCache> cache,
               std::shared_ptr<SparqlTransport> transport,
               std::chrono::milliseconds timeout = std::chrono::seconds(60));

  // Rows for `query`, served from cache when present. Network failures are
  // reported as FetchError(endpoint, key).
  std::vector<SparqlRow> Select(const std::string &key,
                                const std::string &query);

  const std::string &endpoint() const { return endpoint_; }
  bool offline() const { return transport_ == nullptr; }
  size_t network_requests() const { return network_requests_; }

 private:
  std::string endpoint_;
  std::shared_ptr<SparqlCache> cache_;
  std::shared_ptr<SparqlTransport> transport_;
  std::chrono::milliseconds timeout_;
  std::mutex request_mu_;
  std::atomic<size_t> network_requests_{0};
};

}  // namespace coronaner

#endif  // CORONANER_SPARQL_H_
