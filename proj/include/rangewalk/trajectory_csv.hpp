#pragma once

#include <charconv>
#include <cstdint>
#include <istream>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rangewalk/walk.hpp"

namespace rangewalk {

/// Malformed trajectory input; line is 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
    {
    }
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

inline std::string trajectory_header(std::size_t d)
{
    std::string h = "n";
    for (std::size_t i = 1; i <= d; ++i)
        h += ",x" + std::to_string(i);
    return h;
}

/// Writes `n,x1[,…,xd]` rows for x_0 … x_horizon (or until the walk ends).
template <WalkSource W>
std::uint64_t write_trajectory(W& walk, std::uint64_t horizon, std::ostream& out)
{
    std::string line;
    auto put = [&] {
        line.clear();
        line += std::to_string(walk.index());
        for (coord_t c : walk.position().coords()) {
            line += ',';
            line += std::to_string(c);
        }
        line += '\n';
        out << line;
    };
    out << trajectory_header(walk.metadata().d) << '\n';
    put();
    while (walk.index() < horizon && walk.advance())
        put();
    return walk.index();
}

/// Streams a trajectory CSV as a walk. Rows are parsed on demand; the declared m is the
/// caller's claim and is checked by the analyzers, not here.
class TrajectoryWalk {
public:
    TrajectoryWalk(std::unique_ptr<std::istream> in, WalkMetadata meta) : in_(std::move(in)), meta_(std::move(meta))
    {
        std::string header;
        if (!next_line(header))
            throw ParseError(1, "empty trajectory file");
        std::size_t d = 0;
        {
            std::string_view h = header;
            if (h.substr(0, 1) != "n")
                throw ParseError(line_, "header must start with 'n'");
            h.remove_prefix(1);
            while (!h.empty()) {
                const std::string expect = ",x" + std::to_string(d + 1);
                if (h.substr(0, expect.size()) != expect)
                    throw ParseError(line_, "malformed header '" + header + "', expected " + trajectory_header(d + 1));
                h.remove_prefix(expect.size());
                ++d;
            }
        }
        if (d == 0)
            throw ParseError(line_, "header declares no coordinates");
        meta_.d = d;
        pos_ = LatticePoint(d);
        if (!read_row(0))
            throw ParseError(line_ + 1, "trajectory has no rows");
    }

    const WalkMetadata& metadata() const noexcept { return meta_; }
    const LatticePoint& position() const noexcept { return pos_; }
    std::uint64_t index() const noexcept { return index_; }

    bool advance()
    {
        if (done_)
            return false;
        if (!read_row(index_ + 1)) {
            done_ = true;
            return false;
        }
        ++index_;
        return true;
    }

private:
    bool next_line(std::string& s)
    {
        if (!std::getline(*in_, s))
            return false;
        ++line_;
        if (!s.empty() && s.back() == '\r')
            s.pop_back();
        return true;
    }

    bool read_row(std::uint64_t expected_n)
    {
        std::string s;
        if (!next_line(s))
            return false;
        if (s.empty()) {
            std::string rest;
            while (next_line(rest))
                if (!rest.empty())
                    throw ParseError(line_, "blank line inside trajectory");
            return false;
        }
        const char* p = s.data();
        const char* end = s.data() + s.size();
        std::uint64_t n = 0;
        auto r = std::from_chars(p, end, n);
        if (r.ec != std::errc{} || (r.ptr != end && *r.ptr != ','))
            throw ParseError(line_, "bad step index");
        if (n != expected_n)
            throw ParseError(line_, "expected n=" + std::to_string(expected_n) + ", got " + std::to_string(n));
        p = r.ptr;
        for (std::size_t i = 0; i < pos_.dim(); ++i) {
            if (p == end || *p != ',')
                throw ParseError(line_, "expected " + std::to_string(pos_.dim()) + " coordinates");
            ++p;
            coord_t v = 0;
            auto rc = std::from_chars(p, end, v);
            if (rc.ec == std::errc::result_out_of_range)
                throw ParseError(line_, "coordinate out of int64 range");
            if (rc.ec != std::errc{})
                throw ParseError(line_, "bad coordinate");
            pos_[i] = v;
            p = rc.ptr;
        }
        if (p != end)
            throw ParseError(line_, "trailing data after " + std::to_string(pos_.dim()) + " coordinates");
        return true;
    }

    std::unique_ptr<std::istream> in_;
    WalkMetadata meta_;
    LatticePoint pos_;
    std::uint64_t index_ = 0;
    std::size_t line_ = 0;
    bool done_ = false;
};

} // namespace rangewalk
