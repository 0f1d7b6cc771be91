package hudson.plugins.emailext.plugins.content;

import static org.junit.Assert.assertEquals;
import static org.mockito.Mockito.mock;
import static org.mockito.Mockito.when;

import hudson.model.AbstractBuild;
import hudson.model.ChangeLogSet;
import hudson.model.Result;
import hudson.model.TaskListener;
import java.util.Collections;
import org.junit.Before;
import org.junit.Test;

public class ChangesSinceLastUnstableBuildMacroTest {
    private ChangesSinceLastUnstableBuildMacro content;
    private TaskListener lis;

    @Before
    public void setUp() {
        content = new ChangesSinceLastUnstableBuildMacro();
        lis = mock(TaskListener.class);
    }

    @Test
    public void testShouldReverseOrderOfChanges() {
        content.reverse = true;
        AbstractBuild failBld = createBuild(Result.FAILURE,
            41, "Changes for a failed build.");
        AbstractBuild currBld = createBuild_nostub1(Result.SUCCESS,
            42, "Changes for a successful build.");
        when(currBld.getPreviousBuild()).thenReturn(failBld);
        String contentStr = content.evaluate(currBld, lis,
            ChangesSinceLastUnstableBuildMacro.MACRO_NAME);
        assertEquals("Changes for Build #42\nChanges for a successful build.\n"
            + "Changes for Build #41\nChanges for a failed build.\n", contentStr);
    }

    @Test
    public void testShouldGetChangesForLatestBuild() {
        AbstractBuild build = createBuild_nostub1(Result.SUCCESS, 42, "Changes for a successful build.");
        String contentStr = content.evaluate(build, lis,
            ChangesSinceLastUnstableBuildMacro.MACRO_NAME);
        assertEquals("Changes for Build #42\nChanges for a successful build.\n", contentStr);
    }

    @Test
    public void testShouldGetChangesSinceFailedBuild() {
        AbstractBuild failBld = createBuild(Result.FAILURE, 41, "Changes for a failed build.");
        AbstractBuild currBld = createBuild_nostub1(Result.SUCCESS, 42, "Changes for a successful build.");
        when(currBld.getPreviousBuild()).thenReturn(failBld);
        String contentStr = content.evaluate(currBld, lis,
            ChangesSinceLastUnstableBuildMacro.MACRO_NAME);
        assertEquals("Changes for Build #41\nChanges for a failed build.\n"
            + "Changes for Build #42\nChanges for a successful build.\n", contentStr);
    }

    @Test
    public void testShouldGetChangesSinceUnstableBuild() {
        AbstractBuild unstableBld = createBuild(Result.UNSTABLE, 41, "Changes for an unstable build.");
        AbstractBuild currBld = createBuild_nostub1(Result.SUCCESS, 42, "Changes for a successful build.");
        when(currBld.getPreviousBuild()).thenReturn(unstableBld);
        String contentStr = content.evaluate(currBld, lis,
            ChangesSinceLastUnstableBuildMacro.MACRO_NAME);
        assertEquals("Changes for Build #41\nChanges for an unstable build.\n"
            + "Changes for Build #42\nChanges for a successful build.\n", contentStr);
    }

    @Test
    public void testShouldGetChangesSinceTwoFailedBuilds() {
        AbstractBuild firstBld = createBuild(Result.FAILURE, 40, "First failure.");
        AbstractBuild secondBld = createBuild(Result.FAILURE, 41, "Second failure.");
        AbstractBuild currBld = createBuild_nostub1(Result.SUCCESS, 42, "Fixed.");
        when(currBld.getPreviousBuild()).thenReturn(secondBld);
        when(secondBld.getPreviousBuild()).thenReturn(firstBld);
        String contentStr = content.evaluate(currBld, lis,
            ChangesSinceLastUnstableBuildMacro.MACRO_NAME);
        assertEquals("Changes for Build #40\nFirst failure.\n"
            + "Changes for Build #41\nSecond failure.\n"
            + "Changes for Build #42\nFixed.\n", contentStr);
    }

    @Test
    public void testShouldGetChangesSinceMixedBuilds() {
        AbstractBuild failBld = createBuild(Result.FAILURE, 39, "Broken.");
        AbstractBuild unstableBld = createBuild(Result.UNSTABLE, 40, "Flaky.");
        AbstractBuild currBld = createBuild_nostub1(Result.UNSTABLE, 41, "Still flaky.");
        when(currBld.getPreviousBuild()).thenReturn(unstableBld);
        when(unstableBld.getPreviousBuild()).thenReturn(failBld);
        content.reverse = true;
        String contentStr = content.evaluate(currBld, lis,
            ChangesSinceLastUnstableBuildMacro.MACRO_NAME);
        assertEquals("Changes for Build #41\nStill flaky.\n"
            + "Changes for Build #40\nFlaky.\n"
            + "Changes for Build #39\nBroken.\n", contentStr);
    }

    @Test
    public void testShouldGetChangesForFailedCurrentBuild() {
        AbstractBuild build = createBuild_nostub1(Result.FAILURE, 7, "Broke the build.");
        String contentStr = content.evaluate(build, lis,
            ChangesSinceLastUnstableBuildMacro.MACRO_NAME);
        assertEquals("Changes for Build #7\nBroke the build.\n", contentStr);
    }

    @Test
    public void testShouldHandleEmptyMessage() {
        AbstractBuild build = createBuild_nostub1(Result.SUCCESS, 3, "");
        String contentStr = content.evaluate(build, lis,
            ChangesSinceLastUnstableBuildMacro.MACRO_NAME);
        assertEquals("Changes for Build #3\n\n", contentStr);
    }

    @Test
    public void testShouldKeepMultiLineMessages() {
        AbstractBuild build = createBuild_nostub1(Result.SUCCESS, 5, "line one\nline two");
        String contentStr = content.evaluate(build, lis,
            ChangesSinceLastUnstableBuildMacro.MACRO_NAME);
        assertEquals("Changes for Build #5\nline one\nline two\n", contentStr);
    }

    @Test
    public void testShouldIgnoreOtherMacroNames() {
        AbstractBuild build = createBuild_nostub1(Result.SUCCESS, 42, "Changes.");
        String contentStr = content.evaluate(build, lis, "CHANGES");
        assertEquals("", contentStr);
        contentStr = content.evaluate(build, lis,
            ChangesSinceLastUnstableBuildMacro.MACRO_NAME);
        assertEquals("Changes for Build #42\nChanges.\n", contentStr);
    }

    @Test
    public void testShouldEvaluateTwiceConsistently() {
        AbstractBuild failBld = createBuild(Result.FAILURE, 8, "Red.");
        AbstractBuild currBld = createBuild_nostub1(Result.SUCCESS, 9, "Green.");
        when(currBld.getPreviousBuild()).thenReturn(failBld);
        String first = content.evaluate(currBld, lis,
            ChangesSinceLastUnstableBuildMacro.MACRO_NAME);
        String second = content.evaluate(currBld, lis,
            ChangesSinceLastUnstableBuildMacro.MACRO_NAME);
        assertEquals(first, second);
    }

    @Test
    public void testShouldReverseSingleBuild() {
        content.reverse = true;
        AbstractBuild build = createBuild_nostub1(Result.UNSTABLE, 12, "Only build.");
        String contentStr = content.evaluate(build, lis,
            ChangesSinceLastUnstableBuildMacro.MACRO_NAME);
        assertEquals("Changes for Build #12\nOnly build.\n", contentStr);
    }

    private AbstractBuild createBuild(Result result,
        int buildNumber, String message) {
        AbstractBuild build = mock(AbstractBuild.class);
        when(build.getResult()).thenReturn(result);
        ChangeLogSet changes1 = createChangeLog(message);
        when(build.getChangeSets()).thenReturn(
            Collections.singletonList(changes1));
        when(build.getNumber()).thenReturn(buildNumber);
        return build;
    }

    private AbstractBuild createBuild_nostub1(Result result,
        int buildNumber, String message) {
        AbstractBuild build = mock(AbstractBuild.class);
        ChangeLogSet changes1 = createChangeLog(message);
        when(build.getChangeSets()).thenReturn(
            Collections.singletonList(changes1));
        when(build.getNumber()).thenReturn(buildNumber);
        return build;
    }

    private ChangeLogSet createChangeLog(String message) {
        return new ChangeLogSet(message);
    }
}
