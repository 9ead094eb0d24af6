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

#include "coronaner/sparql.h"

#include <openssl/evp.h>

#include <filesystem>
#include <fstream>

#include "coronaner/error.h"
#include "httplib.h"
#include "json.hpp"

namespace coronaner {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// Raw binding objects from a results document.
json ExtractBindings(const std::string &body) {
  json document;
  try {
    document = json::parse(body);
  } catch (const json::exception &e) {
    throw Error(std::string("malformed SPARQL response: ") + e.what());
  }
  if (!document.is_object() || !document.contains("results") ||
      !document["results"].is_object() ||
      !document["results"].contains("bindings") ||
      !document["results"]["bindings"].is_array()) {
    throw Error("malformed SPARQL response: missing results.bindings");
  }
  return document["results"]["bindings"];
}

std::vector<SparqlRow> RowsFromBindings(const json &bindings) {
  std::vector<SparqlRow> rows;
  for (const json &binding : bindings) {
    if (!binding.is_object()) {
      throw Error("malformed SPARQL response: binding is not an object");
    }
    SparqlRow row;
    for (const auto &[variable, term] : binding.items()) {
      if (!term.is_object() || !term.contains("value") ||
          !term["value"].is_string()) {
        throw Error("malformed SPARQL response: variable " + variable +
                    " has no string value");
      }
      row[variable] = term["value"].get<std::string>();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string QueryHash(const std::string &query) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(query.data(), query.size(), digest, &length, EVP_sha256(),
                 nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < length; ++i) {
    hex.push_back(kHex[digest[i] >> 4]);
    hex.push_back(kHex[digest[i] & 0xF]);
  }
  return hex;
}

std::vector<SparqlRow> ParseSparqlResults(const std::string &body) {
  return RowsFromBindings(ExtractBindings(body));
}

std::string ItemIdFromUri(const std::string &uri) {
  size_t slash = uri.find_last_of("/#");
  return slash == std::string::npos ? uri : uri.substr(slash + 1);
}

std::string HttpSparqlTransport::Select(const std::string &endpoint,
                                        const std::string &query,
                                        std::chrono::milliseconds timeout) {
  size_t scheme = endpoint.find("://");
  if (scheme == std::string::npos) {
    throw Error("endpoint URL has no scheme: " + endpoint);
  }
  size_t path_start = endpoint.find('/', scheme + 3);
  std::string origin = endpoint.substr(0, path_start);
  std::string path =
      path_start == std::string::npos ? "/" : endpoint.substr(path_start);

  httplib::Client client(origin);
  if (!client.is_valid()) throw Error("unsupported endpoint URL " + endpoint);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);
  client.set_follow_location(true);

  httplib::Headers headers = {
      {"Accept", "application/sparql-results+json"},
      {"User-Agent", "coronaner/0.1 (corpus annotation; offline cache)"},
  };
  httplib::Params params = {{"query", query}, {"format", "json"}};
  auto result = client.Post(path, headers, params);
  if (!result) {
    throw Error("request failed: " + httplib::to_string(result.error()));
  }
  if (result->status != 200) {
    throw Error("HTTP status " + std::to_string(result->status));
  }
  return result->body;
}

SparqlCache::SparqlCache(std::string path) : path_(std::move(path)) {
  if (path_.empty() || !std::filesystem::exists(path_)) return;
  std::ifstream in(path_, std::ios::binary);
  if (!in) throw Error("cannot open cache " + path_);
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      json entry = json::parse(line);
      Key key{entry.at("endpoint").get<std::string>(),
              entry.at("key").get<std::string>(),
              entry.at("query_hash").get<std::string>()};
      entries_[key] = RowsFromBindings(entry.at("rows"));
    } catch (const json::exception &e) {
      throw FormatError(path_, line_number, e.what());
    } catch (const FormatError &) {
      throw;
    } catch (const Error &e) {
      throw FormatError(path_, line_number, e.what());
    }
  }
}

std::optional<std::vector<SparqlRow>> SparqlCache::Find(
    const std::string &endpoint, const std::string &key,
    const std::string &query) const {
  std::shared_lock lock(mu_);
  auto it = entries_.find(Key{endpoint, key, QueryHash(query)});
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::vector<SparqlRow> SparqlCache::Store(const std::string &endpoint,
                                          const std::string &key,
                                          const std::string &query,
                                          const std::string &response_body) {
  json bindings = ExtractBindings(response_body);
  std::vector<SparqlRow> rows = RowsFromBindings(bindings);
  std::string hash = QueryHash(query);

  std::unique_lock lock(mu_);
  if (!path_.empty()) {
    ordered_json entry;
    entry["endpoint"] = endpoint;
    entry["key"] = key;
    entry["query_hash"] = hash;
    entry["rows"] = bindings;
    std::ofstream out(path_, std::ios::binary | std::ios::app);
    if (!out) throw Error("cannot append to cache " + path_);
    out << entry.dump() << '\n';
    out.flush();
    if (!out) throw Error("write to cache " + path_ + " failed");
  }
  entries_[Key{endpoint, key, hash}] = rows;
  return rows;
}

size_t SparqlCache::size() const {
  std::shared_lock lock(mu_);
  return entries_.size();
}

SparqlClient::SparqlClient(std::string endpoint,
                           std::shared_ptr<SparqlCache> cache,
                           std::shared_ptr<SparqlTransport> transport,
                           std::chrono::milliseconds timeout)
    : endpoint_(std::move(endpoint)),
      cache_(cache ? std::move(cache) : std::make_shared<SparqlCache>()),
      transport_(std::move(transport)),
      timeout_(timeout) {}

std::vector<SparqlRow> SparqlClient::Select(const std::string &key,
                                            const std::string &query) {
  if (auto cached = cache_->Find(endpoint_, key, query)) return *cached;
  if (transport_ == nullptr) {
    throw FetchError(endpoint_, key, "not in cache and client is offline");
  }

  std::lock_guard<std::mutex> lock(request_mu_);
  // Another thread may have fetched the same query while we waited.
  if (auto cached = cache_->Find(endpoint_, key, query)) return *cached;
  std::string body;
  try {
    ++network_requests_;
    body = transport_->Select(endpoint_, query, timeout_);
  } catch (const FetchError &) {
    throw;
  } catch (const Error &e) {
    throw FetchError(endpoint_, key, e.what());
  }
  return cache_->Store(endpoint_, key, query, body);
}

}  // namespace coronaner
