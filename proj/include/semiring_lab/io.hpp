#pragma once

#include <semiring_lab/finite_semiring.hpp>

#include <json.hpp>

#include <fstream>
#include <stdexcept>
#include <string>

namespace semiring_lab {

/// Algebra file format, version 1: a single object with "elements" (list of
/// strings), "add" and "mul" (n x n arrays of 0-based indices), optional
/// "name".
inline nlohmann::json algebra_to_json(const FiniteSemiring & s)
{
    nlohmann::json j;
    j["elements"] = s.elements;
    int n = s.size();
    nlohmann::json add = nlohmann::json::array(), mul = nlohmann::json::array();
    for (int a = 0; a < n; ++a) {
        nlohmann::json add_row = nlohmann::json::array(), mul_row = nlohmann::json::array();
        for (int b = 0; b < n; ++b) {
            add_row.push_back(s.add(a, b));
            mul_row.push_back(s.mul(a, b));
        }
        add.push_back(std::move(add_row));
        mul.push_back(std::move(mul_row));
    }
    j["add"] = std::move(add);
    j["mul"] = std::move(mul);
    if (! s.name.empty())
        j["name"] = s.name;
    return j;
}

inline FiniteSemiring algebra_from_json(const nlohmann::json & j)
{
    FiniteSemiring s;
    if (! j.is_object() || ! j.contains("elements") || ! j.contains("add") || ! j.contains("mul"))
        throw std::invalid_argument("algebra file needs elements, add and mul fields");
    s.elements = j.at("elements").get<std::vector<std::string>>();
    std::size_t n = s.elements.size();
    auto read_table = [&](const char * key) {
        const auto & rows = j.at(key);
        if (! rows.is_array() || rows.size() != n)
            throw std::invalid_argument(std::string(key) + " table is not n x n");
        std::vector<int> table;
        for (const auto & row : rows) {
            if (! row.is_array() || row.size() != n)
                throw std::invalid_argument(std::string(key) + " table is not n x n");
            for (const auto & v : row)
                table.push_back(v.get<int>());
        }
        return table;
    };
    s.add_table = read_table("add");
    s.mul_table = read_table("mul");
    if (j.contains("name"))
        s.name = j.at("name").get<std::string>();
    require_well_formed(s);
    return s;
}

inline FiniteSemiring load_algebra(const std::string & path)
{
    std::ifstream in(path);
    if (! in)
        throw std::invalid_argument("cannot open algebra file: " + path);
    nlohmann::json j;
    in >> j;
    return algebra_from_json(j);
}

inline void save_algebra(const FiniteSemiring & s, const std::string & path)
{
    std::ofstream out(path);
    if (! out)
        throw std::invalid_argument("cannot open output file: " + path);
    out << algebra_to_json(s).dump(2) << "\n";
}

} // namespace semiring_lab
