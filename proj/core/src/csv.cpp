#include "qclmc/csv.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

namespace qclmc::csv {

std::string escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string write(const Table& table) {
    std::string out;
    auto emit = [&out](const Row& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += escape(row[i]);
        }
        out += '\n';
    };
    emit(table.header);
    for (const Row& row : table.rows) emit(row);
    return out;
}

Table parse(const std::string& text) {
    Table table;
    Row row;
    std::string field;
    bool quoted = false;
    bool any = false;
    auto push_field = [&]() { row.push_back(field); field.clear(); };
    auto push_row = [&]() {
        push_field();
        if (!any) {
            table.header = row;
            any = true;
        } else {
            table.rows.push_back(row);
        }
        row.clear();
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            push_field();
        } else if (c == '\n') {
            push_row();
        } else if (c != '\r') {
            field += c;
        }
    }
    if (!field.empty() || !row.empty()) push_row();
    return table;
}

std::string format_double(double value) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

void save(const Table& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("csv: cannot open " + path + " for writing");
    out << write(table);
    if (!out) throw std::runtime_error("csv: write failed for " + path);
}

Table load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("csv: cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse(text);
}

}  // namespace qclmc::csv
