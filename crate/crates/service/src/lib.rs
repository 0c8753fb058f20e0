// Copyright 2026 The Paradox Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Command-line front end and HTTP/JSON session service for `paradox-core`.

pub mod api;
pub mod cli;
pub mod error;
pub mod serve;
pub mod store;

pub use api::{app, ApiSession, Store};
pub use cli::run_command;
pub use error::ApiError;
pub use serve::{bind, serve_on, ServeConfig, ServeError};
pub use store::SessionStore;
