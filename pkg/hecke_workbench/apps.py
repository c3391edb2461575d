from django.apps import AppConfig
from django.utils.translation import gettext_lazy as _


class HeckeWorkbenchConfig(AppConfig):
    name = "hecke_workbench"
    label = "hecke_workbench"
    verbose_name = _("Hecke workbench")
