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

#include "coronaner/entity_types.h"

#include "coronaner/error.h"
#include "coronaner/unicode.h"

namespace coronaner {

namespace {

constexpr const char *kOntoNotesTypes[] = {
    "PERSON",  "NORP",     "FAC",     "ORG",      "GPE",     "LOC",
    "PRODUCT", "EVENT",    "WORK_OF_ART", "LAW",  "LANGUAGE", "DATE",
    "TIME",    "PERCENT",  "MONEY",   "QUANTITY", "ORDINAL", "CARDINAL",
};

constexpr const char *kHealthTypes[] = {
    "CORONAVIRUS", "DISEASE_OR_SYNDROME", "SIGN_OR_SYMPTOM",
    "IMMUNE_RESPONSE", "GROUP",
};

std::string Join(const std::vector<std::string> &names) {
  std::string out;
  for (const auto &name : names) {
    if (!out.empty()) out += ", ";
    out += name;
  }
  return out;
}

}  // namespace

const TypeRegistry &TypeRegistry::Default() {
  static const TypeRegistry *registry = [] {
    auto *r = new TypeRegistry;
    for (const char *name : kOntoNotesTypes) r->Add(name, EntityKind::kGeneric);
    for (const char *name : kHealthTypes) r->Add(name, EntityKind::kHealth);
    return r;
  }();
  return *registry;
}

void TypeRegistry::Add(std::string_view name, EntityKind kind) {
  if (name.empty()) throw ConfigError("entity type name is empty");
  if (Lookup(name) != nullptr) {
    throw ConfigError("duplicate entity type " + std::string(name));
  }
  types_.push_back({utf8::AsciiUpper(name), kind});
}

const EntityType *TypeRegistry::Lookup(std::string_view name) const {
  std::string key = utf8::AsciiUpper(name);
  for (const auto &type : types_) {
    if (type.name == key) return &type;
  }
  return nullptr;
}

std::optional<EntityType> TypeRegistry::Find(std::string_view name) const {
  const EntityType *type = Lookup(name);
  if (type == nullptr) return std::nullopt;
  return *type;
}

const EntityType &TypeRegistry::Get(std::string_view name) const {
  const EntityType *type = Lookup(name);
  if (type == nullptr) {
    throw ConfigError("unknown entity type " + std::string(name) +
                      " (valid: " + Join(Names()) + ")");
  }
  return *type;
}

std::vector<std::string> TypeRegistry::Names() const {
  std::vector<std::string> names;
  for (const auto &type : types_) names.push_back(type.name);
  return names;
}

std::vector<std::string> TypeRegistry::Names(EntityKind kind) const {
  std::vector<std::string> names;
  for (const auto &type : types_) {
    if (type.kind == kind) names.push_back(type.name);
  }
  return names;
}

}  // namespace coronaner
