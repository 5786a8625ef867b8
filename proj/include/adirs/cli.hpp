// SPDX-License-Identifier: Apache-2.0
//
// adirs - angle-domain IRS link simulation library
// Copyright (C) 2026 The adirs authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef ADIRS_CLI_HPP
#define ADIRS_CLI_HPP

#include <iosfwd>

namespace adirs
{

// Exit codes: 0 success, 1 configuration or usage error, 2 numerical failure
int cli_main(int argc, const char *const *argv, std::ostream &out, std::ostream &err);
int cli_main(int argc, const char *const *argv);

} // namespace adirs

#endif
