package hudson.plugins.emailext.plugins.content;

import hudson.model.AbstractBuild;
import hudson.model.ChangeLogSet;
import hudson.model.Result;
import hudson.model.TaskListener;
import java.util.ArrayList;
import java.util.Collections;
import java.util.List;

/** Lists the changes of every build since the last unstable or failed one. */
public class ChangesSinceLastUnstableBuildMacro {
    public static final String MACRO_NAME = "CHANGES_SINCE_LAST_UNSTABLE";

    public boolean reverse = false;

    public String evaluate(AbstractBuild build, TaskListener listener, String macroName) {
        if (!MACRO_NAME.equals(macroName)) {
            return "";
        }
        List<AbstractBuild> builds = new ArrayList<>();
        builds.add(build);
        AbstractBuild previous = build.getPreviousBuild();
        while (previous != null) {
            Result result = previous.getResult();
            if (result == null || !result.isWorseThan(Result.SUCCESS)) {
                break;
            }
            builds.add(previous);
            previous = previous.getPreviousBuild();
        }
        if (!reverse) {
            Collections.reverse(builds);
        }
        StringBuilder out = new StringBuilder();
        for (AbstractBuild b : builds) {
            out.append("Changes for Build #").append(b.getNumber()).append("\n");
            for (ChangeLogSet changes : b.getChangeSets()) {
                out.append(changes.getMessage()).append("\n");
            }
        }
        return out.toString();
    }
}
