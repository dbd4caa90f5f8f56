// Copyright 2026 The uctrl Authors
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

#include "uctrl/matrix_json.hpp"

#include <stdexcept>

namespace uctrl {

nlohmann::json matrix_to_json(const CMatrix &m) {
    nlohmann::json re = nlohmann::json::array();
    nlohmann::json im = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json re_row = nlohmann::json::array();
        nlohmann::json im_row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            re_row.push_back(m(i, j).real());
            im_row.push_back(m(i, j).imag());
        }
        re.push_back(std::move(re_row));
        im.push_back(std::move(im_row));
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

CMatrix matrix_from_json(const nlohmann::json &j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("re")) {
        throw std::invalid_argument("matrix JSON needs rows, cols and re fields");
    }
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    if (rows < 0 || cols < 0) throw std::invalid_argument("matrix JSON has negative shape");
    const auto &re = j.at("re");
    const bool has_im = j.contains("im");
    if (!re.is_array() || static_cast<Eigen::Index>(re.size()) != rows) {
        throw std::invalid_argument("matrix JSON 're' does not have 'rows' rows");
    }
    if (has_im && (!j.at("im").is_array() || static_cast<Eigen::Index>(j.at("im").size()) != rows)) {
        throw std::invalid_argument("matrix JSON 'im' does not have 'rows' rows");
    }
    CMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const auto &re_row = re.at(static_cast<std::size_t>(r));
        if (static_cast<Eigen::Index>(re_row.size()) != cols) {
            throw std::invalid_argument("matrix JSON row length does not match 'cols'");
        }
        for (Eigen::Index c = 0; c < cols; ++c) {
            const double x = re_row.at(static_cast<std::size_t>(c)).get<double>();
            double y = 0.0;
            if (has_im) {
                const auto &im_row = j.at("im").at(static_cast<std::size_t>(r));
                if (static_cast<Eigen::Index>(im_row.size()) != cols) {
                    throw std::invalid_argument("matrix JSON row length does not match 'cols'");
                }
                y = im_row.at(static_cast<std::size_t>(c)).get<double>();
            }
            m(r, c) = Complex(x, y);
        }
    }
    return m;
}

}  // namespace uctrl
