"""Unavoidable drawings of complete multipartite graphs."""
