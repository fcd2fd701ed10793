"""Sphinx configuration for the hetpir documentation."""

import os
import sys

sys.path.insert(0, os.path.abspath('../..'))

extensions = ['sphinx.ext.autodoc',
              'sphinx.ext.mathjax',
              'sphinx.ext.intersphinx',
              'sphinx.ext.viewcode',
              'sphinx.ext.napoleon']

# Docstrings use Args/Returns/Raises sections
napoleon_google_docstring = True
napoleon_numpy_docstring = False
autoclass_content = 'both'
autodoc_member_order = 'bysource'

source_suffix = '.rst'
master_doc = 'index'

project = 'hetpir'
copyright = '2026, the hetpir developers'
version = release = "1.0"

exclude_patterns = []
pygments_style = 'sphinx'

html_theme = 'sphinx_rtd_theme'
html_show_sphinx = False
htmlhelp_basename = 'hetpirdoc'

intersphinx_mapping = {
    'python': ('https://docs.python.org/3', None),
    'numpy': ('https://numpy.org/doc/stable', None),
    'pandas': ('https://pandas.pydata.org/docs', None),
    'simpy': ('https://simpy.readthedocs.io/en/latest', None),
}
