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

use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid number `{0}`")]
    ParseNumber(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid game: {0}")]
    InvalidGame(String),
    #[error("invalid edit: {0}")]
    InvalidEdit(String),
    #[error("player {0} does not have perfect recall")]
    ImperfectRecall(usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("malformed XML: {0}")]
    Xml(String),
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("zero pivot element at row {row}, column {col}")]
    ZeroPivot { row: usize, col: usize },
    #[error("computation cancelled")]
    Cancelled,
    #[error("time limit exceeded")]
    Timeout,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
