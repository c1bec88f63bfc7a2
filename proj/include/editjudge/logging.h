// Copyright 2026 The EditJudge Authors.
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

#ifndef EDITJUDGE_LOGGING_H_
#define EDITJUDGE_LOGGING_H_

namespace editjudge {

// Routes the default logger to stderr. The level comes from EDITJUDGE_LOG
// (trace, debug, info, warn, error, critical, off); the default is warn.
// Safe to call more than once.
void init_logging();

}  // namespace editjudge

#endif  // EDITJUDGE_LOGGING_H_
