# -*- coding: utf-8 -*-
#
# Pareto-Rules documentation build configuration file.

import sys, os
sys.path.append(os.path.abspath('.'))
sys.path.append(os.path.abspath('..'))

extensions = ['sphinx.ext.autodoc']

templates_path = ['_templates']

source_suffix = '.rst'

master_doc = 'index'

project = u'Pareto-Rules'

import datetime
copyright = u'%i, Pareto-Rules developers' % datetime.datetime.utcnow().year

import pareto_rules
version = pareto_rules.__version__
release = pareto_rules.__version__

exclude_patterns = ['_build']

pygments_style = 'sphinx'

html_theme = 'alabaster'

html_static_path = ['_static']

html_show_sourcelink = False

htmlhelp_basename = 'Pareto-Rulesdoc'

latex_documents = [
  ('index', 'Pareto-Rules.tex', u'Pareto-Rules Documentation',
   u'Pareto-Rules developers', 'manual'),
]

man_pages = [
    ('index', 'pareto-rules', u'Pareto-Rules Documentation',
     [u'Pareto-Rules developers'], 1)
]
