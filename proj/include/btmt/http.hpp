//
// Copyright 2026 The btmt Authors
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
//

// Minimal JSON-over-HTTP POST used by the translator and scorer clients.

#ifndef BTMT_HTTP_HPP_
#define BTMT_HTTP_HPP_

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

#include "btmt/error.hpp"
#include "httplib.h"

namespace btmt::http {

/// "http://host:port/prefix" split into the client origin and path prefix.
struct Endpoint {
  std::string origin;  // scheme://host[:port]
  std::string prefix;  // "" or "/something" without trailing slash

  static Endpoint parse(std::string_view url) {
    const std::size_t scheme_end = url.find("://");
    if (scheme_end == std::string_view::npos || scheme_end == 0) {
      throw Error(Errc::kInvalidArgument,
                  "endpoint must be an http URL: " + std::string(url));
    }
    const std::string_view scheme = url.substr(0, scheme_end);
    if (scheme != "http") {
      throw Error(Errc::kInvalidArgument,
                  "unsupported scheme in " + std::string(url));
    }
    const std::size_t path_start = url.find('/', scheme_end + 3);
    Endpoint ep;
    if (path_start == std::string_view::npos) {
      ep.origin = std::string(url);
    } else {
      ep.origin = std::string(url.substr(0, path_start));
      ep.prefix = std::string(url.substr(path_start));
      while (!ep.prefix.empty() && ep.prefix.back() == '/') ep.prefix.pop_back();
    }
    if (ep.origin.size() <= scheme_end + 3) {
      throw Error(Errc::kInvalidArgument, "endpoint has no host: " +
                                              std::string(url));
    }
    return ep;
  }
};

struct Response {
  int status = 0;
  std::string body;
};

/// Returns nullopt when no HTTP response was received (connection refused,
/// timeout); otherwise the status and body, whatever the status code.
inline std::optional<Response> post_json(const Endpoint& endpoint,
                                         const std::string& path,
                                         const std::string& body,
                                         std::chrono::milliseconds timeout) {
  httplib::Client client(endpoint.origin);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);
  httplib::Result result =
      client.Post(endpoint.prefix + path, body, "application/json");
  if (!result) return std::nullopt;
  return Response{result->status, result->body};
}

}  // namespace btmt::http

#endif  // BTMT_HTTP_HPP_
