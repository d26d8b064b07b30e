// Copyright 2026 The qapipe Authors.
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

#ifndef QAPIPE_TOOLS_CLI_H_
#define QAPIPE_TOOLS_CLI_H_

#include <iosfwd>

namespace qapipe::cli {

// Exit codes: 0 ok, 1 unexpected failure, 2 config error, 3 bad input,
// 4 data-file error.
int run(int argc, const char *const *argv, std::istream &in, std::ostream &out,
        std::ostream &err);

}  // namespace qapipe::cli

#endif  // QAPIPE_TOOLS_CLI_H_
