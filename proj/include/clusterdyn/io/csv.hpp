// Copyright 2026 The clusterdyn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CLUSTERDYN_IO_CSV_HPP
#define CLUSTERDYN_IO_CSV_HPP

#include <cstdio>
#include <stdexcept>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace clusterdyn::io {

/// Formats with 9 significant digits and '.' as the decimal mark.
inline std::string fmt9(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

/// CSV with '#'-prefixed metadata lines, a header row, then records.
class CsvWriter {
   public:
    explicit CsvWriter(std::ostream &out) : out_(out) {}

    void meta(const std::string &key, const std::string &value) { out_ << "# " << key << ": " << value << '\n'; }

    void header(const std::vector<std::string> &cols) {
        ncols_ = cols.size();
        for (std::size_t k = 0; k < cols.size(); ++k) out_ << (k ? "," : "") << cols[k];
        out_ << '\n';
    }

    void row(const std::vector<double> &vals) {
        if (ncols_ && vals.size() != ncols_) {
            throw std::invalid_argument("CSV row width does not match header");
        }
        for (std::size_t k = 0; k < vals.size(); ++k) out_ << (k ? "," : "") << fmt9(vals[k]);
        out_ << '\n';
    }

   private:
    std::ostream &out_;
    std::size_t ncols_ = 0;
};

}  // namespace clusterdyn::io

#endif  // CLUSTERDYN_IO_CSV_HPP
