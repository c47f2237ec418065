# Configuration file for the Sphinx documentation builder.
#
# For a full list of options see the documentation:
# https://www.sphinx-doc.org/en/master/usage/configuration.html

import datetime

import wsspectra

# -- Project information -----------------------------------------------------

project = "wsspectra"
copyright = "{}, wsspectra contributors".format(datetime.date.today().year)
author = "wsspectra contributors"

# The full version, including alpha/beta/rc tags
release = wsspectra.__version__


# -- General configuration ---------------------------------------------------

master_doc = "index"

extensions = ["sphinx.ext.autodoc", "sphinx.ext.napoleon", "sphinx.ext.mathjax"]

templates_path = ["_templates"]

exclude_patterns = []


# -- Options for HTML output -------------------------------------------------

html_theme = "sphinx_rtd_theme"
html_theme_path = ["_themes"]

html_static_path = ["_static"]
