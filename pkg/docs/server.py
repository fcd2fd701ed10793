"""Launch a livereload server serving up the html documention. Watch the
sphinx source directory for changes and rebuild the html documentation. Watch
the hetpir package directory for changes and rebuild the API documentation.

Requires livereload_ (or falls back to http.server) ::

  pip install livereload

.. _livereload: https://github.com/lepture/python-livereload"""

try:
    from livereload import Server

    server = Server()
    server.watch('source', 'make buildhtml')
    server.watch('../hetpir', 'make apidoc')
    server.serve(root='build/html', open_url=True)
except ImportError:
    from functools import partial
    from http.server import HTTPServer, SimpleHTTPRequestHandler

    Handler = partial(SimpleHTTPRequestHandler, directory="build/html")
    httpd = HTTPServer(("", 8000), Handler)
    httpd.serve_forever()
