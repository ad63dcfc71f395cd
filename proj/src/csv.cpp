#include "ptdiff/csv.hpp"

#include "ptdiff/errors.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace ptdiff {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_file_atomic(const std::string& path, const std::string& contents) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) fail(errc::numerical_failure, "cannot open " + tmp + " for writing");
        os << contents;
        if (!os) fail(errc::numerical_failure, "short write to " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

csv_writer::csv_writer(std::string path, const std::vector<std::string>& columns)
    : path_(std::move(path)), tmp_(path_ + ".tmp") {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) buf_ += ',';
        buf_ += columns[i];
    }
    buf_ += '\n';
}

void csv_writer::row(std::initializer_list<double> values) {
    std::size_t i = 0;
    for (double v : values) {
        if (i++) buf_ += ',';
        buf_ += format_g17(v);
    }
    buf_ += '\n';
}

void csv_writer::row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) buf_ += ',';
        buf_ += cells[i];
    }
    buf_ += '\n';
}

void csv_writer::close() {
    if (!open_) return;
    open_ = false;
    write_file_atomic(path_, buf_);
}

csv_writer::~csv_writer() {
    try {
        close();
    } catch (...) {
        // destructor must not throw; a failed flush leaves the .tmp behind
    }
}

} // namespace ptdiff
