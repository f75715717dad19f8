// Copyright 2026 The anneal-rbm Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include <string>

#include <json.hpp>

namespace rbm::io {

/// Throws IoError if the file cannot be opened, FormatError if it is not JSON.
nlohmann::json read_json_file(const std::string& path);
/// Compact, key-sorted dump plus trailing newline; byte-stable for equal input.
void write_json_file(const std::string& path, const nlohmann::json& j);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

[[noreturn]] void throw_missing(const char* key);
[[noreturn]] void throw_bad_type(const char* key, const char* detail);

/// Typed member access with FormatError on absence or type mismatch.
template <typename T>
T required(const nlohmann::json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw_missing(key);
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw_bad_type(key, e.what());
    }
}

}  // namespace rbm::io
