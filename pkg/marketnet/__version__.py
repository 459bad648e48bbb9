__title__ = "marketnet"
__version__ = "1.0.0"
__description__ = "Centrality and concentration analysis of directed networks of cooperating organizations."
__author__ = "marketnet contributors"
__author_email__ = "marketnet@users.noreply.github.com"
__license__ = "MIT"
__url__ = "https://github.com/marketnet/marketnet"
__copyright__ = "Copyright 2026 marketnet contributors"
