#ifndef RBDA_SERVER_HPP
#define RBDA_SERVER_HPP

#include <string>

#include "rbda/error.hpp"
#include "rbda/session.hpp"

namespace httplib {
class Server;
}

namespace rbda {

struct ServerOptions {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string sessions_dir = "sessions";
  std::string static_dir;  // optional UI bundle mounted at "/"
};

/// Installs the JSON session API (see docs/api.md) on `server`.
void register_routes(httplib::Server& server, SessionStore& store);

/// Blocks until the server stops. Returns false if the port cannot be bound.
bool run_server(const ServerOptions& options);

/// HTTP status for a library error: 404 unknown session, 409 stage order,
/// 422 for invalid input, 500 otherwise.
int http_status(ErrorKind kind);

}  // namespace rbda

#endif  // RBDA_SERVER_HPP
