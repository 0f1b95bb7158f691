// Copyright (c) 2026 The atcboost Authors
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

#ifndef ATCBOOST_STRINGS_H_
#define ATCBOOST_STRINGS_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace atcboost {

// Splits on the exact delimiter; empty fields are kept, so
// Split("a,,b", ',') has three elements.
std::vector<std::string> Split(std::string_view text, char delim);

// Splits on runs of ASCII whitespace; no empty tokens.
std::vector<std::string> SplitWhitespace(std::string_view text);

std::string Join(std::span<const std::string> parts, std::string_view sep);

// Strips leading and trailing ASCII whitespace.
std::string_view StripAscii(std::string_view text);

std::string ToLowerAscii(std::string_view text);
std::string ToUpperAscii(std::string_view text);

}  // namespace atcboost

#endif  // ATCBOOST_STRINGS_H_
