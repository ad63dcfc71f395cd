#ifndef PTDIFF_CSV_HPP
#define PTDIFF_CSV_HPP

#include <initializer_list>
#include <string>
#include <vector>

namespace ptdiff {

/** Formats a double with 17 significant digits (round-trip stable). */
std::string format_g17(double v);

/** CSV emitter.  Writes to <path>.tmp and renames into place on close so
 * readers never observe a partial file. */
class csv_writer {
public:
    csv_writer(std::string path, const std::vector<std::string>& columns);
    ~csv_writer();
    csv_writer(const csv_writer&) = delete;
    csv_writer& operator=(const csv_writer&) = delete;

    void row(std::initializer_list<double> values);
    void row(const std::vector<std::string>& cells);
    void close();

private:
    std::string path_, tmp_;
    std::string buf_;
    bool open_ = true;
};

/** Atomic whole-file write (temp + rename). */
void write_file_atomic(const std::string& path, const std::string& contents);

} // namespace ptdiff

#endif
