# Configuration file for the Sphinx documentation builder.
import os
import sys

sys.path.insert(0, os.path.abspath(".."))

from marketnet import __version__  # noqa: E402

extensions = ["sphinx.ext.autodoc", "sphinx.ext.napoleon", "sphinx_autodoc_typehints"]

templates_path = ["_templates"]
source_suffix = ".rst"
master_doc = "index"

project = __version__.__title__
copyright = __version__.__copyright__
author = __version__.__author__
version = __version__.__version__
release = version

language = None
exclude_patterns = ["_build", "Thumbs.db", ".DS_Store"]
pygments_style = "sphinx"
todo_include_todos = False

html_theme = "alabaster"
html_static_path = ["_static"]
htmlhelp_basename = "marketnetdoc"

man_pages = [(master_doc, "marketnet", "marketnet Documentation", [author], 1)]

autodoc_member_order = "bysource"
typehints_fully_qualified = False
set_type_checking_flag = True
always_document_param_types = True
