#pragma once

#include <chrono>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace tdanorms {

// A trading day. Parsed from and printed as ISO-8601 `YYYY-MM-DD`.
class Date {
public:
    Date() = default;
    explicit Date(std::chrono::year_month_day ymd) : ymd_(ymd) {}
    Date(int year, unsigned month, unsigned day)
        : ymd_(std::chrono::year{year}, std::chrono::month{month}, std::chrono::day{day}) {}

    static std::optional<Date> parse(std::string_view text);

    int year() const { return static_cast<int>(ymd_.year()); }
    unsigned month() const { return static_cast<unsigned>(ymd_.month()); }
    unsigned day() const { return static_cast<unsigned>(ymd_.day()); }
    std::chrono::year_month_day ymd() const { return ymd_; }

    std::string to_string() const;

    friend auto operator<=>(const Date& a, const Date& b) { return a.ymd_ <=> b.ymd_; }
    friend bool operator==(const Date& a, const Date& b) = default;

private:
    std::chrono::year_month_day ymd_{};
};

// A calendar month, `YYYY-MM`.
class Month {
public:
    Month() = default;
    Month(int year, unsigned month) : serial_(year * 12 + static_cast<int>(month) - 1) {}
    explicit Month(const Date& d) : Month(d.year(), d.month()) {}

    static std::optional<Month> parse(std::string_view text);
    static Month from_serial(int serial) {
        Month m;
        m.serial_ = serial;
        return m;
    }

    int year() const { return floor_div(serial_, 12); }
    unsigned month() const { return static_cast<unsigned>(serial_ - year() * 12 + 1); }

    // Months since year 0; differences count calendar months.
    int serial() const { return serial_; }
    Month plus(int months) const { return from_serial(serial_ + months); }

    std::string to_string() const;

    friend auto operator<=>(const Month& a, const Month& b) = default;

private:
    static int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

    int serial_ = 0;
};

}  // namespace tdanorms
