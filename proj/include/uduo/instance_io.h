// Copyright 2026 The UDuo Authors
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

// JSON-lines instance files.
//
// Line 1 is a header:
//   {"budget": B, "treatment_count": n, "includes_null": true|false,
//    "slot_count": T}                       // slot_count optional
// Every following non-empty line is one user:
//   {"user_id": i, "arrival_time": t, "rewards": [...], "costs": [...]}
//
// Reals are written with 17 significant digits so a write/read cycle is
// bit-exact.

#ifndef UDUO_INSTANCE_IO_H_
#define UDUO_INSTANCE_IO_H_

#include <iosfwd>
#include <optional>
#include <span>
#include <string>

#include "uduo/core_model.h"

namespace uduo {

// "%.17g"; throws kNonFinite on NaN or infinity.
std::string FormatReal(double value);
// "[a,b,c]" using FormatReal.
std::string FormatRealArray(std::span<const double> values);

struct InstanceFile {
  AllocationInstance instance;
  std::optional<int> slot_count;
};

void WriteInstance(std::ostream& out, const AllocationInstance& instance,
                   std::optional<int> slot_count = std::nullopt);
void WriteInstanceFile(const std::string& path,
                       const AllocationInstance& instance,
                       std::optional<int> slot_count = std::nullopt);

// Throws kParse on malformed content. The instance is returned as written;
// callers validate.
InstanceFile ReadInstance(std::istream& in);
// Throws kIo when the file cannot be opened.
InstanceFile ReadInstanceFile(const std::string& path);

// Streams are stored as one instance whose users carry their arrival times;
// slot t holds users with floor(arrival_time) == t.
AllocationInstance FlattenStream(const SlottedUsers& stream, double budget);
SlottedUsers SlotUsers(const AllocationInstance& instance, int slot_count);

}  // namespace uduo

#endif  // UDUO_INSTANCE_IO_H_
