from . import ci, docs, project
