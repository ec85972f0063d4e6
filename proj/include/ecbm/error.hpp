// Copyright 2026 The ecbm Authors
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

#ifndef ECBM_ERROR_HPP_
#define ECBM_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace ecbm {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller passed a parameter outside its documented domain (rule length out
// of range, malformed sender-model string, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Input data is malformed or inconsistent: unreadable files, bad JSON,
// phrases naming unknown features, duplicate record ids.
class DataError : public Error {
 public:
  using Error::Error;
};

}  // namespace ecbm

#endif  // ECBM_ERROR_HPP_
